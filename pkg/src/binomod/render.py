"""Portable pixmap (binary P6) rendering of Pascal's triangle mod p."""

from __future__ import annotations

import colorsys

import numpy as np

from .binom import SignConvention, require_prime, residue_row

__all__ = ["palette", "render_ppm", "triangle"]

BACKGROUND = (255, 255, 255)


def palette(p: int) -> np.ndarray:
    """RGB colour per residue: 0 is pale grey, ``1..p-1`` are spread over the hue circle."""
    colours = [(235, 235, 235)]
    for r in range(1, p):
        rgb = colorsys.hsv_to_rgb((r - 1) / max(1, p - 1), 0.85, 0.8)
        colours.append(tuple(int(round(255 * c)) for c in rgb))
    return np.array(colours, dtype=np.uint8)


def triangle(k_max: int, p: int, convention: SignConvention | str = SignConvention.UNSIGNED) -> np.ndarray:
    """``(k_max+1, k_max+1)`` array of residues; ``-1`` above the diagonal."""
    grid = np.full((k_max + 1, k_max + 1), -1, dtype=np.int64)
    for k in range(k_max + 1):
        grid[k, : k + 1] = residue_row(k, p, convention).values
    return grid


def render_ppm(k_max: int, p: int, convention: SignConvention | str = SignConvention.UNSIGNED, scale: int = 4) -> bytes:
    """Rows ``0..k_max`` as a ``(k_max+1)*scale`` square image."""
    require_prime(p)
    if p > 4096:
        raise ValueError("palette supports p <= 4096")
    if scale < 1 or k_max < 0:
        raise ValueError("need scale >= 1 and k_max >= 0")
    grid = triangle(k_max, p, convention)
    colours = np.vstack([palette(p), np.array([BACKGROUND], dtype=np.uint8)])
    img = colours[np.where(grid < 0, p, grid)]
    img = np.repeat(np.repeat(img, scale, axis=0), scale, axis=1)
    h, w, _ = img.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + img.tobytes()
