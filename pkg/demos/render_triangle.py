"""
Rendering Pascal's triangle mod p
=================================

Writes ``triangle_mod3.ppm`` (binary P6) into the current directory, or into
``$BINOMOD_OUTPUT_DIR`` if that is set.
"""

from binomod.render import render_ppm, triangle
from binomod.report import write_report

print(triangle(8, 3))

data = render_ppm(242, 3, "unsigned", scale=3)
path = write_report(data, "triangle_mod3.ppm")
print("wrote", path, len(data), "bytes")
