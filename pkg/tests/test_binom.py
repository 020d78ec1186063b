import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binomod.binom import (
    RowTooLongError,
    SignConvention,
    binom_mod,
    binom_mod_split,
    column,
    ext_binom,
    is_power_of,
    padic_digits,
    require_prime,
    residue_row,
    split,
    symmetry_reflect,
    upper_period,
)

PRIMES = (2, 3, 5, 7, 11)


def exact_mod(k, i, p):
    if i < 0 or i > k:
        return 0
    return math.comb(k, i) % p


def expand_series(k, n_terms):
    """Coefficients of (1 + x)**k up to x**(n_terms-1) by repeated series multiplication."""
    coeffs = [1] + [0] * (n_terms - 1)
    if k >= 0:
        for _ in range(k):
            coeffs = [coeffs[0]] + [coeffs[j] + coeffs[j - 1] for j in range(1, n_terms)]
    else:
        # (1 + x)**-1 = 1 - x + x**2 - ...
        inv = [(-1) ** j for j in range(n_terms)]
        for _ in range(-k):
            coeffs = [sum(coeffs[t] * inv[j - t] for t in range(j + 1)) for j in range(n_terms)]
    return coeffs


class TestPrimes:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 65521, 2147483647])
    def test_accepts_primes(self, p):
        assert require_prime(p) == p

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 91, 2**31, -3])
    def test_rejects(self, p):
        with pytest.raises(ValueError):
            require_prime(p)

    def test_rejects_non_int(self):
        with pytest.raises(TypeError):
            require_prime(3.0)


class TestDigits:
    @pytest.mark.parametrize("b,p,want", [(0, 3, [0]), (11, 3, [2, 0, 1]), (8, 2, [0, 0, 0, 1])])
    def test_examples(self, b, p, want):
        assert padic_digits(b, p) == want

    @given(st.integers(0, 10**12), st.sampled_from(PRIMES))
    def test_positional_value(self, b, p):
        d = padic_digits(b, p)
        assert sum(c * p**j for j, c in enumerate(d)) == b
        assert all(0 <= c < p for c in d)
        assert d[-1] != 0 or b == 0


class TestSplit:
    def test_division(self):
        s = split(11, 3, 1)
        assert (s.hi, s.lo) == (3, 2)

    def test_power_minus_one_tail(self):
        s = split(26, 3, 2)
        assert (s.hi, s.lo) == (2, 8)

    def test_shifted_period(self):
        # h + p^r - 1 with h=4, p=3, r=1
        s = split(4 + 3 - 1, 3, 1)
        assert (s.hi, s.lo) == (2, 0)

    @given(st.integers(0, 10**9), st.sampled_from(PRIMES), st.integers(0, 8))
    def test_invariant(self, b, p, r):
        s = split(b, p, r)
        assert s.b == s.hi * p**r + s.lo and 0 <= s.lo < p**r


class TestBinomMod:
    def test_examples(self):
        assert binom_mod(8, 3, 3) == 2
        assert binom_mod(11, 5, 3) == 0
        assert binom_mod(10**15, 0, 7) == 1

    @pytest.mark.parametrize("i", [-1, -5, 9, 100])
    def test_outside_range(self, i):
        assert binom_mod(8, i, 3) == 0

    @pytest.mark.parametrize("p", PRIMES)
    def test_oracle_grid(self, p):
        for k in range(0, 121):
            for i in range(k + 1):
                assert binom_mod(k, i, p) == math.comb(k, i) % p

    @given(st.integers(0, 2000), st.integers(0, 2000), st.sampled_from([2, 3, 5, 13, 31, 1009]))
    def test_oracle_random(self, k, i, p):
        assert binom_mod(k, i, p) == exact_mod(k, i, p)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_pascal_recursion(self, p):
        for k in range(300):
            for i in range(-1, k + 1):
                assert binom_mod(k + 1, i + 1, p) == (binom_mod(k, i, p) + binom_mod(k, i + 1, p)) % p

    @pytest.mark.parametrize("p", [2, 3, 7])
    def test_row_symmetry(self, p):
        for k in range(150):
            for i in range(k + 1):
                assert binom_mod(k, i, p) == binom_mod(k, k - i, p)

    def test_large_prime_large_k(self):
        p = 2147483647
        k, i = 3 * p + 12345, p + 17
        # digits (12345, 3) and (17, 1): Lucas by hand with exact small binomials
        assert binom_mod(k, i, p) == math.comb(12345, 17) * 3 % p

    def test_rejects_negative_k(self):
        with pytest.raises(ValueError):
            binom_mod(-1, 0, 3)


class TestSplitEvaluation:
    def test_examples(self):
        assert binom_mod_split(8, 3, 3, 1) == 2
        assert binom_mod_split(26, 8, 3, 2) == 1
        assert binom_mod_split(17, 4, 5, 0) == binom_mod(17, 4, 5)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_split_agrees(self, p):
        for k in range(0, 201, 3):
            for i in range(0, k + 1, 2):
                for r in range(6):
                    assert binom_mod_split(k, i, p, r) == binom_mod(k, i, p)


class TestExtBinom:
    def test_examples(self):
        assert ext_binom(-2, 3) == -4
        assert ext_binom(5, 2) == 10
        assert [ext_binom(-1, i) for i in range(8)] == [(-1) ** i for i in range(8)]

    @pytest.mark.parametrize("k", [-4, -1, 0, 3, 7])
    def test_matches_series(self, k):
        series = expand_series(k, 12)
        assert [ext_binom(k, i) for i in range(12)] == series

    def test_negative_upper_identity(self):
        for k in range(1, 21):
            for i in range(21):
                assert ext_binom(-k, i) == (-1) ** i * ext_binom(k + i - 1, i)

    def test_nonnegative_matches_comb(self):
        for k in range(30):
            for i in range(35):
                assert ext_binom(k, i) == math.comb(k, i)


class TestResidueRow:
    def test_all_ones_when_k_plus_one_is_power(self):
        assert residue_row(8, 3, "signed_lower").tolist() == [1] * 9

    def test_two_blocks(self):
        assert residue_row(5, 3).tolist() == [1, 1, 1, 2, 2, 2]

    def test_zero_block(self):
        assert residue_row(11, 3).tolist() == [1, 1, 1, 0, 0, 0, 0, 0, 0, 2, 2, 2]

    @pytest.mark.parametrize("conv", list(SignConvention))
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_against_oracle(self, conv, p):
        for k in range(0, 80):
            row = residue_row(k, p, conv)
            assert len(row) == k + 1
            assert row.values[0] == conv.sign(k, 0) % p
            for i in range(k + 1):
                assert row.values[i] == conv.sign(k, i) * math.comb(k, i) % p
                mirrored = conv.sign(k, i) * conv.sign(k, k - i) * row.values[k - i] % p
                assert row.values[i] == mirrored

    @pytest.mark.parametrize("p", PRIMES)
    def test_alternating_sum_vanishes(self, p):
        for k in range(1, 120):
            assert int(residue_row(k, p, "signed_lower").values.sum()) % p == 0

    def test_guard(self):
        with pytest.raises(RowTooLongError):
            residue_row(100, 3, max_len=50)

    def test_upper_sign(self):
        assert residue_row(3, 5, "signed_upper").tolist() == [4, 2, 2, 4]


class TestUpperPeriod:
    def test_examples(self):
        assert upper_period(0, 7) == 1
        assert upper_period(2, 3) == 3
        assert upper_period(9, 2) == 16

    def test_column_example(self):
        assert [binom_mod(k, 2, 3) for k in range(9)] == [0, 0, 1, 0, 0, 1, 0, 0, 1]

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_is_least_p_power_period(self, p):
        for i in range(51):
            m = upper_period(i, p)
            col = [binom_mod(k, i, p) for k in range(4 * m + 1)]
            assert all(col[k + m] == col[k] for k in range(len(col) - m))
            smaller = m // p
            while smaller >= 1:
                assert any(col[k + smaller] != col[k] for k in range(len(col) - smaller))
                smaller //= p


class TestSymmetry:
    def test_examples(self):
        assert symmetry_reflect(2, 1, 1, 3) == (2, 2)
        assert symmetry_reflect(0, 0, 4, 5) == (1, 1)
        assert symmetry_reflect(8, 4, 2, 3) == (1, 1)

    @pytest.mark.parametrize("p,s", [(2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (5, 3)])
    def test_identity(self, p, s):
        for k in range(p**s):
            for i in range(k + 1):
                lhs, rhs = symmetry_reflect(k, i, s, p)
                assert lhs == rhs
                assert lhs == (-1) ** k * math.comb(k, i) % p

    @pytest.mark.parametrize("k,i", [(9, 0), (3, 4), (-1, 0)])
    def test_range_errors(self, k, i):
        with pytest.raises(ValueError):
            symmetry_reflect(k, i, 2, 3)


def test_column_signs():
    assert column(1, 3, 1, 5).tolist() == [k % 3 for k in range(1, 6)]
    assert column(1, 3, 1, 4, "signed_upper").tolist() == [2, 2, 0, 1]


@pytest.mark.parametrize("n,p,want", [(1, 5, True), (125, 5, True), (250, 5, False), (0, 2, False), (6, 2, False)])
def test_is_power_of(n, p, want):
    assert is_power_of(n, p) is want


@settings(max_examples=50)
@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5]))
def test_lucas_digit_product(k, i, p):
    kd, id_ = padic_digits(k, p), padic_digits(i, p)
    kd += [0] * (len(id_) - len(kd))
    prod = 1
    for a, b in zip(kd, id_ + [0] * (len(kd) - len(id_))):
        prod *= math.comb(a, b)
    assert binom_mod(k, i, p) == prod % p
