"""Monic integer polynomials and their factor-degree patterns modulo primes.

Coefficient sequences are constant term first throughout, so
``t^6 - 3t^2 - 1`` is ``[-1, 0, -3, 0, 0, 0, 1]``.  Over F_p only the
multiset of irreducible-factor degrees is extracted (distinct-degree
factorization); no equal-degree splitting is done, so everything here is
deterministic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError, InvalidPolynomial, NotSquarefree


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        if any(isinstance(c, bool) or int(c) != c for c in coeffs):
            raise InvalidPolynomial(f"coefficients must be integers: {coeffs}")
        coeffs = _trim([int(c) for c in coeffs])
        if len(coeffs) < 2:
            raise InvalidPolynomial("polynomial must have degree at least 1")
        if coeffs[-1] != 1:
            raise InvalidPolynomial(f"polynomial must be monic, leading coefficient is {coeffs[-1]}")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def parse(cls, obj: Union[str, Sequence[int], IntPolynomial]) -> IntPolynomial:
        if isinstance(obj, IntPolynomial):
            return obj
        if isinstance(obj, str):
            return cls(parse_polynomial(obj))
        if isinstance(obj, (list, tuple)):
            return cls(tuple(obj))
        raise InvalidPolynomial(f"cannot read a polynomial from {obj!r}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(tuple(_int_mul(self.coefficients, other.coefficients)))

    def __str__(self) -> str:
        return format_polynomial(self.coefficients)


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


_TERM_RE = re.compile(r"([+-]?)(\d*)(?:\*?([a-zA-Z])(?:\^(\d+))?)?")


def parse_polynomial(text: str) -> list[int]:
    """Parse ``"t^6-3t^2-1"``-style strings into constant-first coefficients."""
    s = re.sub(r"\s+", "", text).replace("**", "^")
    if not s:
        raise InvalidPolynomial("empty polynomial string")
    coeffs: dict[int, int] = {}
    var = None
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group(2) == "" and m.group(3) is None):
            raise InvalidPolynomial(f"cannot parse polynomial {text!r} at position {pos}")
        if pos > 0 and not m.group(1):
            raise InvalidPolynomial(f"missing sign between terms in {text!r}")
        sign, num, v, exp = m.groups()
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise InvalidPolynomial(f"mixed variables in {text!r}")
            power = int(exp) if exp else 1
        else:
            power = 0
        c = int(num) if num else 1
        coeffs[power] = coeffs.get(power, 0) + (-c if sign == "-" else c)
        pos = m.end()
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + (f"^{i}" if i > 1 else "")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


# -- resultants and discriminants over Q ----------------------------------

def _frac_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a.pop()
        _trim(a)
    return _trim(q), a


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two nonzero integer polynomials via the Euclidean recursion."""
    f = _trim([Fraction(c) for c in f])
    g = _trim([Fraction(c) for c in g])
    if not f or not g:
        return 0
    acc = Fraction(1)
    while True:
        n, m = len(f) - 1, len(g) - 1
        if m == 0:
            acc *= g[0] ** n
            break
        if n == 0:
            acc *= f[0] ** m
            break
        _, r = _frac_divmod(f, g)
        if not r:
            return 0
        # res(f, g) = (-1)^(n m) lc(g)^(n - deg r) res(g, r)
        if (n * m) % 2:
            acc = -acc
        acc *= g[-1] ** (n - (len(r) - 1))
        f, g = g, r
    assert acc.denominator == 1
    return int(acc)


def discriminant(f: Union[IntPolynomial, Sequence[int]]) -> int:
    coeffs = list(f.coefficients if isinstance(f, IntPolynomial) else f)
    n = len(coeffs) - 1
    if n < 1:
        raise InvalidPolynomial("discriminant needs degree at least 1")
    deriv = [i * coeffs[i] for i in range(1, n + 1)]
    res = resultant(coeffs, deriv)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = Fraction(sign * res, coeffs[-1])
    assert value.denominator == 1
    return int(value)


# -- polynomials over F_p -------------------------------------------------

def _mod_trim(a: list, p: int) -> list:
    return _trim([c % p for c in a])


def _mulmod(a: list, b: list, f: list, p: int) -> list:
    """``a * b mod f`` over F_p for monic ``f``; inputs reduced, deg < deg f."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _reduce(prod, f, p)


def _reduce(a: list, f: list, p: int) -> list:
    n = len(f) - 1
    a = [c % p for c in a]
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            base = i - n
            for j in range(n):
                a[base + j] = (a[base + j] - c * f[j]) % p
        a[i] = 0
    return _trim(a[:n] if len(a) > n else a)


def _powmod(a: list, e: int, f: list, p: int) -> list:
    result = [1] if len(f) > 1 else []
    base = _reduce(a, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, p)
    return result


def _divmod_p(a: list, b: list, p: int) -> tuple[list, list]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % p
        _trim(a)
    return _trim(q), a


def _make_monic(a: list, p: int) -> list:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd_p(a: list, b: list, p: int) -> list:
    while b:
        a, b = b, _divmod_p(a, b, p)[1]
    return _make_monic(a, p)


def _deriv_p(a: list, p: int) -> list:
    return _mod_trim([i * a[i] for i in range(1, len(a))], p)


def _sub_p(a: list, b: list, p: int) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, y in enumerate(b):
        a[i] -= y
    return _mod_trim(a, p)


@dataclass(frozen=True)
class ModPolynomial:
    p: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2:
            raise InputError(f"modulus must be prime, got {self.p}")
        coeffs = tuple(_mod_trim(list(self.coefficients), self.p))
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_squarefree(self) -> bool:
        f = list(self.coefficients)
        d = _deriv_p(f, self.p)
        if not d:
            return self.degree <= 0
        return len(_gcd_p(f, d, self.p)) == 1

    def __str__(self) -> str:
        return format_polynomial(self.coefficients)


def reduce_mod_p(f: IntPolynomial, p: int) -> ModPolynomial:
    return ModPolynomial(p, f.coefficients)


def _require_squarefree(g: ModPolynomial) -> list:
    f = list(g.coefficients)
    if not f or f[-1] != 1:
        f = _make_monic(f, g.p)
    if len(f) < 2:
        raise InputError("need a polynomial of degree at least 1")
    if not g.is_squarefree():
        raise NotSquarefree(f"{g} is not squarefree modulo {g.p}")
    return f


def factor_degree_pattern(g: ModPolynomial) -> tuple[int, ...]:
    """Sorted degrees of the monic irreducible factors of a squarefree ``g``."""
    p = g.p
    f = _require_squarefree(g)
    x = [0, 1]
    h = _reduce(x, f, p)
    degrees: list[int] = []
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        # h = x^(p^d) mod f: one more p-th power of the previous stage
        h = _powmod(h, p, f, p)
        common = _gcd_p(f, _sub_p(h, x, p), p)
        k = len(common) - 1
        if k > 0:
            degrees.extend([d] * (k // d))
            f = _divmod_p(f, common, p)[0]
            h = _reduce(h, f, p)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return tuple(sorted(degrees))


def _monic_polys(d: int, p: int):
    """All monic degree-d polynomials over F_p, constant-first."""
    for n in range(p ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def oracle_factor_degrees(g: ModPolynomial) -> tuple[int, ...]:
    """Factor degrees by trial division by every monic polynomial, smallest degree first.

    Once all factors of degree < d are divided out, any monic degree-d
    divisor is irreducible, so no separate irreducibility test is needed.
    Exponential in the degree; for small p and degree only.
    """
    p = g.p
    f = _require_squarefree(g)
    degrees = []
    d = 1
    while len(f) - 1 >= 2 * d:
        for q in _monic_polys(d, p):
            quo, rem = _divmod_p(f, q, p)
            if not rem:
                degrees.append(d)
                f = quo
                if len(f) - 1 < 2 * d:
                    break
        d += 1
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return tuple(sorted(degrees))


def prime_stream(bound: int) -> list[int]:
    """All primes ``<= bound`` in increasing order."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]
