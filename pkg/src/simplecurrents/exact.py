"""Exact scalars: rationals and elements of cyclotomic fields.

Every phase that shows up in the library is of the form ``exp(pi*i*q)`` with
``q`` rational, so all scalars live in some cyclotomic field Q(zeta_N).  An
element is stored as its coordinate vector on the power basis
``1, zeta, ..., zeta^(phi(N)-1)`` after reduction modulo the N-th cyclotomic
polynomial, which makes equality a plain tuple comparison once two elements
are lifted to a common conductor.

Rational results are always returned as :class:`fractions.Fraction`, so the
common case never pays for the cyclotomic machinery.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[int, Fraction, "Cyclotomic"]


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def frac_str(x: Fraction | int) -> str:
    """Serialize a rational as ``"p/q"`` (denominator always written)."""
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def lcm_many(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = lcm(out, int(v))
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by every Phi_d with d | n, d < n.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] // lead
        out[k] = q
        for j, c in enumerate(den):
            num[k + j] -= q * c
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k holds the power-basis coordinates of zeta_n^k, for 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    for k in range(n):
        if k < deg:
            row = [Fraction(0)] * deg
            row[k] = Fraction(1)
        else:
            # zeta^k = zeta * zeta^(k-1); shift then reduce the top coefficient.
            prev = rows[k - 1]
            top = prev[-1]
            row = [Fraction(0)] + list(prev[:-1])
            if top:
                for j in range(deg):
                    row[j] -= top * phi[j]
        rows.append(tuple(row))
    return tuple(rows)


def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """An element of Q(zeta_N), zeta_N = exp(2*pi*i/N).

    Construct through :func:`root_of_unity` or arithmetic; the constructor takes
    already-reduced power-basis coordinates.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Fraction]):
        self.n = n
        self.coeffs = tuple(coeffs)

    # -- construction -------------------------------------------------
    @staticmethod
    def from_powers(n: int, powers: dict[int, Fraction]) -> Scalar:
        """Sum of ``c * zeta_n^k`` over the dict items, reduced."""
        table = _reduction_table(n)
        deg = _phi(n)
        acc = [Fraction(0)] * deg
        for k, c in powers.items():
            if not c:
                continue
            row = table[k % n]
            for j in range(deg):
                if row[j]:
                    acc[j] += c * row[j]
        return _normalize(n, acc)

    # -- helpers -------------------------------------------------------
    def lift(self, m: int) -> list[Fraction]:
        """Coordinates in Q(zeta_m) for a multiple m of the conductor."""
        if m == self.n:
            return list(self.coeffs)
        step = m // self.n
        table = _reduction_table(m)
        deg = _phi(m)
        acc = [Fraction(0)] * deg
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(k * step) % m]
                for j in range(deg):
                    if row[j]:
                        acc[j] += c * row[j]
        return acc

    def __complex__(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(float(c)) * z**k for k, c in enumerate(self.coeffs))

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return self
            c = list(self.coeffs)
            c[0] += other
            return _normalize(self.n, c)
        if isinstance(other, Cyclotomic):
            m = lcm(self.n, other.n)
            a, b = self.lift(m), other.lift(m)
            return _normalize(m, [x + y for x, y in zip(a, b)])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return Fraction(0)
            return Cyclotomic(self.n, [c * other for c in self.coeffs])
        if isinstance(other, Cyclotomic):
            m = lcm(self.n, other.n)
            a, b = self.lift(m), other.lift(m)
            powers: dict[int, Fraction] = {}
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    if y:
                        powers[i + j] = powers.get(i + j, Fraction(0)) + x * y
            return Cyclotomic.from_powers(m, powers)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        """Multiplicative inverse via the norm trick on the power basis."""
        # Solve (self * x) = 1 as a linear system over Q.
        n, deg = self.n, _phi(self.n)
        cols = []
        for j in range(deg):
            prod = self * Cyclotomic.from_powers(n, {j: Fraction(1)})
            cols.append(_coords(prod, n))
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        sol = _solve(mat, rhs)
        return _normalize(n, sol)

    def __truediv__(self, other):
        return self * inverse(other)

    def __rtruediv__(self, other):
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        out: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return False  # rational values are never stored as Cyclotomic
        if isinstance(other, Cyclotomic):
            m = lcm(self.n, other.n)
            return self.lift(m) == other.lift(m)
        return NotImplemented

    def __hash__(self):
        z = complex(self)
        return hash((round(z.real, 9), round(z.imag, 9)))

    def __bool__(self):
        return True

    def __repr__(self):
        terms = [f"{c}*z{self.n}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + " + ".join(terms) + ")"


def _coords(x: Scalar, n: int) -> list[Fraction]:
    if isinstance(x, Cyclotomic):
        return x.lift(n)
    out = [Fraction(0)] * _phi(n)
    out[0] = Fraction(x)
    return out


def _normalize(n: int, coeffs: list[Fraction]) -> Scalar:
    if not any(coeffs[1:]):
        return Fraction(coeffs[0]) if coeffs else Fraction(0)
    return Cyclotomic(n, coeffs)


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rhs)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][size] for i in range(size)]


def root_of_unity(q) -> Scalar:
    """exp(pi * i * q) for rational q, exactly."""
    q = frac(q)
    q = q - 2 * (q.numerator // (2 * q.denominator))  # reduce into [0, 2)
    if q == 0:
        return Fraction(1)
    if q == 1:
        return Fraction(-1)
    n = 2 * q.denominator
    return Cyclotomic.from_powers(n, {q.numerator: Fraction(1)})


def inverse(x: Scalar) -> Scalar:
    if isinstance(x, Cyclotomic):
        return x.inverse()
    x = Fraction(x)
    if not x:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def phase_exponent(x: Scalar) -> Fraction | None:
    """Return q in [0, 2) with x == exp(pi*i*q), or None when x is not a root of unity."""
    if not isinstance(x, Cyclotomic):
        x = Fraction(x)
        if x == 1:
            return Fraction(0)
        if x == -1:
            return Fraction(1)
        return None
    n = x.n
    for k in range(2 * n):
        q = Fraction(k, n)
        if root_of_unity(q) == x:
            return q
    return None


def is_zero(x: Scalar) -> bool:
    return not isinstance(x, Cyclotomic) and x == 0
