import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from cyclesplit.errors import InvalidPolynomial, NotSquarefree
from cyclesplit.polys import (
    IntPolynomial,
    ModPolynomial,
    _gcd_p,
    _powmod,
    _sub_p,
    discriminant,
    factor_degree_pattern,
    format_polynomial,
    oracle_factor_degrees,
    parse_polynomial,
    prime_stream,
    reduce_mod_p,
)


def bareiss_det(m):
    """Fraction-free integer determinant."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def sylvester_discriminant(coeffs):
    """disc(f) = (-1)^(n(n-1)/2) det Sylvester(f, f') / lc(f)."""
    f = list(reversed(coeffs))            # highest degree first
    n = len(f) - 1
    df = [c * (n - i) for i, c in enumerate(f[:-1])]
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([0] * i + f + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + df + [0] * (size - n - i))
    det = bareiss_det(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return Fraction(sign * det, f[0])


def monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


class TestIntPolynomial:
    @pytest.mark.parametrize("text,coeffs", [
        ("t^6-3t^2-1", [-1, 0, -3, 0, 0, 0, 1]),
        ("t^2 + 1", [1, 0, 1]),
        ("x**3 - 2*x + 5", [5, -2, 0, 1]),
        ("-1+t", [-1, 1]),
        ("t^6-6", [-6, 0, 0, 0, 0, 0, 1]),
    ])
    def test_parse(self, text, coeffs):
        assert parse_polynomial(text) == coeffs
        assert IntPolynomial.parse(text).coefficients == tuple(coeffs)

    @pytest.mark.parametrize("bad", ["", "t^2 t", "2t^2+1", "t^2+y", "3", "t^2+*1"])
    def test_rejects(self, bad):
        with pytest.raises(InvalidPolynomial):
            IntPolynomial.parse(bad)

    def test_array_form(self):
        assert IntPolynomial.parse([-1, 0, -3, 0, 0, 0, 1]) == IntPolynomial.parse("t^6-3t^2-1")
        with pytest.raises(InvalidPolynomial):
            IntPolynomial.parse([1, 2])

    def test_format_round_trip(self):
        for text in ["t^6-3t^2-1", "t^2+1", "t-7", "t^3+t"]:
            assert format_polynomial(parse_polynomial(text)) == text


class TestDiscriminant:
    @pytest.mark.parametrize("coeffs,expected", [
        ([1, 0, 1], -4),
        ([-2, 0, 1], 8),
        ([9, -6, 1], 0),
    ])
    def test_examples(self, coeffs, expected):
        assert sylvester_discriminant(coeffs) == expected
        assert discriminant(IntPolynomial(tuple(coeffs))) == expected

    @pytest.mark.parametrize("text", ["t^2+1", "t^6-3t^2-1", "t^2-2", "t^2-3", "t^6-6"])
    def test_example_polynomials_nonzero(self, text):
        f = IntPolynomial.parse(text)
        d = discriminant(f)
        assert d != 0 and d == sylvester_discriminant(list(f.coefficients))

    def test_products(self):
        f = IntPolynomial.parse("t^2+1") * IntPolynomial.parse("t^6-3t^2-1")
        assert discriminant(f) == sylvester_discriminant(list(f.coefficients))

    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
    def test_matches_sylvester(self, tail):
        coeffs = tail + [1]
        assert discriminant(coeffs) == sylvester_discriminant(coeffs)

    @given(st.integers(-9, 9), st.lists(st.integers(-5, 5), min_size=1, max_size=3))
    def test_repeated_root_gives_zero(self, a, tail):
        g = IntPolynomial(tuple(tail + [1]))
        sq = IntPolynomial((-a, 1)) * IntPolynomial((-a, 1)) * g
        assert discriminant(sq) == 0


class TestReduction:
    def test_examples(self):
        assert reduce_mod_p(IntPolynomial.parse("t^2+1"), 5).coefficients == (1, 0, 1)
        assert reduce_mod_p(IntPolynomial.parse("t^6-6"), 5).coefficients == (4, 0, 0, 0, 0, 0, 1)
        assert reduce_mod_p(IntPolynomial.parse("t^2-2"), 2).coefficients == (0, 0, 1)

    @pytest.mark.parametrize("text", ["t^2+1", "t^6-3t^2-1", "t^2-2", "t^6-6"])
    def test_unramified_reduction_is_squarefree(self, text):
        f = IntPolynomial.parse(text)
        d = discriminant(f)
        for p in prime_stream(2000):
            g = reduce_mod_p(f, p)
            assert g.degree == f.degree
            if d % p:
                assert g.is_squarefree()


class TestFactorDegrees:
    @pytest.mark.parametrize("p,coeffs,expected", [
        (5, [1, 0, 1], (1, 1)),
        (3, [1, 0, 1], (2,)),
        (5, [-1, 0, 0, 0, 0, 0, 1], (1, 1, 2, 2)),
    ])
    def test_examples(self, p, coeffs, expected):
        g = ModPolynomial(p, coeffs)
        assert oracle_factor_degrees(g) == expected
        assert factor_degree_pattern(g) == expected

    def test_oracle_small_cases(self):
        assert oracle_factor_degrees(ModPolynomial(7, [3, 1])) == (1,)
        assert oracle_factor_degrees(ModPolynomial(2, [0, 1, 1])) == (1, 1)

    def test_not_squarefree(self):
        with pytest.raises(NotSquarefree):
            factor_degree_pattern(ModPolynomial(2, [0, 0, 1]))
        with pytest.raises(NotSquarefree):
            oracle_factor_degrees(ModPolynomial(3, [1, 2, 1]))
        with pytest.raises(NotSquarefree):
            factor_degree_pattern(ModPolynomial(3, [0, 0, 0, 1]))

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_exhaustive_against_trial_division(self, p):
        checked = 0
        for d in range(1, 5):
            for coeffs in monic_polys(p, d):
                g = ModPolynomial(p, coeffs)
                if not g.is_squarefree():
                    continue
                pattern = factor_degree_pattern(g)
                assert pattern == oracle_factor_degrees(g), (p, coeffs)
                assert sum(pattern) == d
                checked += 1
        assert checked > 0

    @settings(max_examples=150, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.data())
    def test_random_against_trial_division(self, p, data):
        max_deg = 8 if p <= 7 else 6
        d = data.draw(st.integers(1, max_deg))
        coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=d, max_size=d)) + [1]
        g = ModPolynomial(p, coeffs)
        assume(g.is_squarefree())
        assert factor_degree_pattern(g) == oracle_factor_degrees(g)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7, 31, 101]), st.data())
    def test_frobenius_powers(self, p, data):
        """Iterated p-th powers agree with a direct x^(p^d), and gcd degrees match the pattern."""
        d = data.draw(st.integers(2, 7))
        coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=d, max_size=d)) + [1]
        g = ModPolynomial(p, coeffs)
        assume(g.is_squarefree())
        f = list(g.coefficients)
        pattern = factor_degree_pattern(g)
        h = [0, 1]
        for k in range(1, d + 1):
            h = _powmod(h, p, f, p)
            assert h == _powmod([0, 1], p ** k, f, p)
            common = _gcd_p(f, _sub_p(h, [0, 1], p), p) if _sub_p(h, [0, 1], p) else f
            assert len(common) - 1 == sum(e for e in pattern if k % e == 0)


class TestPrimes:
    def test_small(self):
        assert prime_stream(10) == [2, 3, 5, 7]
        assert prime_stream(2) == [2]
        assert prime_stream(1) == []

    def test_count_below_100000(self):
        def is_prime(n):
            if n < 2:
                return False
            k = 2
            while k * k <= n:
                if n % k == 0:
                    return False
                k += 1
            return True
        primes = prime_stream(100_000)
        assert len(primes) == 9592
        assert sum(1 for n in range(100_001) if is_prime(n)) == 9592
        assert primes == sorted(primes)
