"""Exact truncated lattice vertex operator algebras.

The space is the Fock module ``S(h^-) (x) C[L0 + coset]`` for an even
positive definite lattice ``L0 = Z^r`` with Gram matrix ``gram``; module
vectors may carry rational lattice parts.  A basis element is a Heisenberg
monomial ``b_{i1}(-n1) ... b_{ik}(-nk)`` times ``e^gamma``; its degree is
``n1 + ... + nk + <gamma, gamma>/2``.

Basis elements are packed into Python ints (see :meth:`FockSpace.key`): the
low bits hold an interned id of the lattice part and each mode ``b_i(-n)``
owns a 6-bit multiplicity field above them.  Multiplying monomials is then
integer addition, which is what keeps the vertex operator recursion fast.

Vertex operators are computed exactly with a degree cap: every routine that
produces a Laurent series returns all terms whose output degree is at most
``cap`` and nothing else.

Conventions
-----------
* ``E^{+-}(s h, z) = exp(sum_k s h(+-k)/k z^{-+k})``.
* ``Y(e^g, z) = E^-(g, z) E^+(-g, z) e_g z^{g(0)}`` with
  ``e_g e^d = eps(g, d) e^{g+d}``.
* ``Delta(a, z) = z^{a(0)} exp(sum_k a(k)/(-k) (-z)^{-k})``.
* For rational ``lam`` the branch ``(-z)^lam = exp(pi i lam) z^lam`` is used.
* The sign cocycle is ``eps(b_i, b_j) = 1`` for ``i <= j`` and
  ``(-1)^{<b_i, b_j>}`` for ``i > j``, extended bimultiplicatively (lattice
  parts of module vectors enter through their integer floor).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, isqrt
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from . import _matrix as mx
from .exact import Cyclotomic, Scalar, frac, frac_str, root_of_unity

Series = dict  # exponent -> {key: coefficient}

# Internal arithmetic uses gmpy2 rationals; they hash like Fractions, so
# exponents can be looked up with either type.
ZERO = mpq(0)
ONE = mpq(1)

_GAMMA_BITS = 24
_GAMMA_MASK = (1 << _GAMMA_BITS) - 1
_FIELD_BITS = 6
_FIELD_MASK = (1 << _FIELD_BITS) - 1
#: Largest degree the packed keys can represent without a multiplicity overflowing.
MAX_DEGREE = _FIELD_MASK


class FockError(ValueError):
    pass


def num(x):
    """Coerce to the internal rational type (cyclotomic scalars pass through)."""
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


# ---------------------------------------------------------------------------
# small helpers on dict-vectors


def vd_add(target: dict, vd: Mapping, scale=ONE) -> None:
    """target += scale * vd (in place), dropping zeros."""
    get = target.get
    if scale == 1:
        for k, c in vd.items():
            val = get(k, 0) + c
            if val:
                target[k] = val
            else:
                target.pop(k, None)
        return
    for k, c in vd.items():
        val = get(k, 0) + c * scale
        if val:
            target[k] = val
        else:
            target.pop(k, None)


def vd_scale(vd: Mapping, scale) -> dict:
    if not scale:
        return {}
    return {k: c * scale for k, c in vd.items()}


def series_add(target: dict, exp, vd: Mapping, scale=ONE) -> None:
    if not vd:
        return
    slot = target.get(exp)
    if slot is None:
        slot = {}
        target[exp] = slot
    vd_add(slot, vd, scale)
    if not slot:
        del target[exp]


def gen_binom(lam, j: int):
    """Generalized binomial coefficient binom(lam, j) for rational lam."""
    lam = num(lam)
    out = ONE
    for t in range(j):
        out = out * (lam - t) / (t + 1)
    return out


def neg_power(lam) -> Scalar:
    """(-1)^lam on the principal branch exp(pi i lam)."""
    return num(root_of_unity(frac(lam)))


# ---------------------------------------------------------------------------
# the Fock space


class FockSpace:
    """Truncated Fock space of the lattice vertex operator algebra of ``gram``.

    ``gram`` must be an even integral positive definite symmetric matrix (the
    lattice ``L0`` in coordinates).  Lattice parts of basis vectors are
    coordinate vectors in the same frame; vectors with non-integral lattice
    parts are module vectors.
    """

    def __init__(self, gram, label: str | None = None):
        g = mx.as_matrix(gram)
        n = len(g)
        if n == 0 or any(len(r) != n for r in g):
            raise FockError("Gram matrix must be square and non-empty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise FockError("Gram matrix must be symmetric")
        if not mx.is_integral(g) or any(g[i][i].numerator % 2 for i in range(n)):
            raise FockError("the lattice must be even")
        if any(mx.determinant([row[:k] for row in g[:k]]) <= 0 for k in range(1, n + 1)):
            raise FockError("the lattice must be positive definite")
        self.gram = tuple(tuple(num(x) for x in r) for r in g)
        self.gram_inv = tuple(tuple(num(x) for x in r) for r in mx.inverse(g))
        self.rank = n
        self.label = label
        self._gammas: list[tuple] = []
        self._gamma_ids: dict = {}
        self._ycache: dict = {}
        self._creation_cache: dict = {}
        self._degree_cache: dict = {}
        self._gamma_id(self.zero_vec())

    # -- packed keys -----------------------------------------------------------
    def _gamma_id(self, gamma: tuple) -> int:
        gid = self._gamma_ids.get(gamma)
        if gid is None:
            gid = len(self._gammas)
            if gid > _GAMMA_MASK:
                raise FockError("too many distinct lattice parts")
            self._gammas.append(gamma)
            self._gamma_ids[gamma] = gid
        return gid

    def _shift(self, n: int, i: int) -> int:
        return _GAMMA_BITS + _FIELD_BITS * ((n - 1) * self.rank + i)

    def mode_bit(self, n: int, i: int) -> int:
        """The packed increment for one factor b_i(-n)."""
        return 1 << self._shift(n, i)

    def key(self, modes: Iterable = (), gamma=None) -> int:
        """Pack ``modes`` (pairs ``(n, i)`` for ``b_i(-n)``, 0-based ``i``) and ``gamma``."""
        gamma = self.zero_vec() if gamma is None else self.vec(gamma)
        k = self._gamma_id(gamma)
        total = 0
        for n, i in modes:
            n, i = int(n), int(i)
            if n < 1 or not 0 <= i < self.rank:
                raise FockError("modes must be (n >= 1, direction index) pairs")
            total += n
            k += self.mode_bit(n, i)
        if total > MAX_DEGREE:
            raise FockError(f"Heisenberg degree above {MAX_DEGREE} is not supported")
        return k

    def gamma(self, key: int) -> tuple:
        return self._gammas[key & _GAMMA_MASK]

    def with_gamma(self, key: int, gamma: tuple) -> int:
        return (key & ~_GAMMA_MASK) | self._gamma_id(gamma)

    def modes(self, key: int) -> tuple[tuple[int, int], ...]:
        """Sorted ``(n, i)`` pairs of the Heisenberg monomial, with repetition."""
        mono = key >> _GAMMA_BITS
        out = []
        slot = 0
        while mono:
            m = mono & _FIELD_MASK
            if m:
                n, i = divmod(slot, self.rank)
                out.extend([(n + 1, i)] * m)
            mono >>= _FIELD_BITS
            slot += 1
        return tuple(out)

    def unpack(self, key: int) -> tuple[tuple[tuple[int, int], ...], tuple]:
        return self.modes(key), self.gamma(key)

    def multiplicity(self, key: int, n: int, i: int) -> int:
        return (key >> self._shift(n, i)) & _FIELD_MASK

    def max_mode(self, key: int) -> int:
        bl = (key >> _GAMMA_BITS).bit_length()
        if not bl:
            return 0
        return (bl - 1) // _FIELD_BITS // self.rank + 1

    def first_mode(self, key: int) -> tuple[int, int] | None:
        mono = key >> _GAMMA_BITS
        if not mono:
            return None
        slot = ((mono & -mono).bit_length() - 1) // _FIELD_BITS
        n, i = divmod(slot, self.rank)
        return n + 1, i

    def key_str(self, key: int) -> str:
        modes, gamma = self.unpack(key)
        mono = "".join(f"h{i + 1}(-{n})" for n, i in sorted(modes, key=lambda p: (p[1], -p[0])))
        g = ",".join(str(frac(x)) for x in gamma)
        return f"{mono}|gamma=({g})"

    # -- pairing and degree ------------------------------------------------
    def pair(self, x, y):
        g = self.gram
        n = self.rank
        return sum((x[i] * g[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]), ZERO)

    def direction_pair(self, h, i: int):
        """<h, b_i>."""
        g = self.gram
        return sum((h[k] * g[k][i] for k in range(self.rank) if h[k]), ZERO)

    def degree(self, key: int):
        d = self._degree_cache.get(key)
        if d is None:
            gamma = self.gamma(key)
            d = sum((n for n, _ in self.modes(key)), 0) + self.pair(gamma, gamma) / 2
            self._degree_cache[key] = d
        return d

    def vd_degree(self, vd: Mapping):
        """Common degree of a homogeneous dict-vector (None when empty)."""
        degs = {self.degree(k) for k in vd}
        if not degs:
            return None
        if len(degs) > 1:
            raise FockError("vector is not homogeneous")
        return degs.pop()

    def vec(self, v) -> tuple:
        v = tuple(num(x) for x in v)
        if len(v) != self.rank:
            raise FockError(f"expected a vector of length {self.rank}")
        return v

    def zero_vec(self) -> tuple:
        return (ZERO,) * self.rank

    # -- basis --------------------------------------------------------------
    def basis(self, max_degree, cosets: Iterable = None) -> list[int]:
        """All basis keys of degree <= max_degree with lattice part in the given cosets."""
        max_degree = num(max_degree)
        cosets = [self.zero_vec()] if cosets is None else [self.vec(c) for c in cosets]
        out = []
        for shift in cosets:
            for gamma in self.lattice_points(shift, max_degree):
                rest = max_degree - self.pair(gamma, gamma) / 2
                for modes in _mode_multisets(int(rest), self.rank):
                    out.append(self.key(modes, gamma))
        return sorted(set(out), key=lambda k: (self.degree(k), self.unpack(k)))

    def lattice_points(self, shift, bound) -> list[tuple]:
        """Points of ``shift + Z^r`` with <g, g>/2 <= bound."""
        gi = self.gram_inv
        # <g,g>/2 <= bound  =>  |g_i| <= sqrt(2 * bound * Ginv_ii)
        radii = [isqrt(max(0, floor(2 * bound * gi[i][i]))) + 2 for i in range(self.rank)]
        pts = []
        for c in itertools.product(*[range(-r, r + 1) for r in radii]):
            g = tuple(s + x for s, x in zip(shift, c))
            if self.pair(g, g) / 2 <= bound:
                pts.append(g)
        return pts

    # -- sign cocycle ------------------------------------------------------------
    def eps(self, g, d):
        """eps(g, d) = (-1)^{sum_{i>j} g_i floor(d_j) <b_i, b_j>}."""
        total = 0
        gm = self.gram
        for i in range(self.rank):
            gi = g[i]
            if not gi:
                continue
            if gi.denominator != 1:
                raise FockError("the first argument of the sign cocycle must be in the even lattice")
            for j in range(i):
                dj = d[j]
                if dj:
                    total += int(gi) * int(floor(dj)) * int(gm[i][j])
        return ONE if total % 2 == 0 else -ONE

    # -- Heisenberg action -----------------------------------------------------
    def heis_key(self, h, n: int, key: int) -> dict:
        """h(n) applied to one basis key (h given in lattice coordinates)."""
        if n < 0:
            return {key + self.mode_bit(-n, i): h[i] for i in range(self.rank) if h[i]}
        if n == 0:
            val = self.pair(h, self.gamma(key))
            return {key: val} if val else {}
        out: dict = {}
        for i in range(self.rank):
            m = self.multiplicity(key, n, i)
            if not m:
                continue
            c = m * n * self.direction_pair(h, i)
            if c:
                out[key - self.mode_bit(n, i)] = c
        return out

    def heis(self, h, n: int, vd: Mapping) -> dict:
        h = self.vec(h)
        out: dict = {}
        for k, c in vd.items():
            vd_add(out, self.heis_key(h, n, k), c)
        return out

    # -- exponentials of Heisenberg modes -------------------------------------
    def annihilation_exp(self, h, coeff: Callable[[int], Scalar], vd: Mapping) -> dict:
        """exp(sum_{k>=1} coeff(k) h(k) w^k) vd, returned as {total mode degree M: vector}.

        The formal weight ``w^M`` is left to the caller (for example ``z^{-M}``).
        """
        h = self.vec(h)
        current = {0: dict(vd)}
        maxmode = max((self.max_mode(k) for k in vd), default=0)
        for k in range(1, maxmode + 1):
            ck = num(coeff(k))
            if not ck:
                continue
            nxt: dict = {}
            for deg, v in current.items():
                term = v
                m = 0
                fact_scale = ONE
                while term:
                    series_add(nxt, deg + m * k, term, fact_scale)
                    term = self.heis(h, k, term)
                    m += 1
                    fact_scale = fact_scale * ck / m
            current = nxt
        return current

    def creation_poly(self, h, scale, max_deg: int) -> dict:
        """exp(sum_k scale/k h(-k) w^k) as {K: {packed monomial: coef}} for K <= max_deg."""
        h = self.vec(h)
        scale = num(scale)
        if max_deg > MAX_DEGREE:
            raise FockError(f"degree cap above {MAX_DEGREE} is not supported")
        ckey = (h, scale)
        cached = self._creation_cache.get(ckey)
        if cached is not None and cached[0] >= max_deg:
            if cached[0] == max_deg:
                return cached[1]
            return {K: v for K, v in cached[1].items() if K <= max_deg}
        poly: dict = {0: {0: ONE}}
        dirs = [(i, h[i]) for i in range(self.rank) if h[i]]
        for k in range(1, max_deg + 1):
            ck = scale / k
            bits = [(self.mode_bit(k, i), hi) for i, hi in dirs]
            nxt: dict = {}
            for K, monos in poly.items():
                # multiply by sum_m (c_k h(-k))^m / m!
                term = monos
                m = 0
                coef = ONE
                while K + m * k <= max_deg and term:
                    vd_add(nxt.setdefault(K + m * k, {}), term, coef)
                    new_term: dict = {}
                    for mono, c in term.items():
                        for bit, hi in bits:
                            nm = mono + bit
                            new_term[nm] = new_term.get(nm, 0) + c * hi
                    term = new_term
                    m += 1
                    coef = coef * ck / m
            poly = {K: v for K, v in nxt.items() if v}
        self._creation_cache[ckey] = (max_deg, poly)
        return poly

    def creation_exp(self, h, scale, vd: Mapping, budget) -> dict:
        """E^-(scale*h, w) vd as {K: vector} for K <= budget (K is the power of w)."""
        if not vd:
            return {}
        budget = num(budget)
        if budget < 0:
            return {}
        poly = self.creation_poly(h, scale, int(floor(budget)))
        out: dict = {0: dict(vd)}
        items = list(vd.items())
        for K, monos in poly.items():
            if K == 0:
                continue
            slot: dict = {}
            get = slot.get
            mono_items = list(monos.items())
            for key, c in items:
                for mono, mc in mono_items:
                    nk = key + mono
                    val = get(nk, 0) + c * mc
                    if val:
                        slot[nk] = val
                    else:
                        del slot[nk]
            if slot:
                out[K] = slot
        return out

    # -- vertex operators -----------------------------------------------------------
    def Y_key(self, ukey: int, vkey: int, cap) -> Series:
        """Y(u, z) v for basis keys, all terms with output degree <= cap."""
        cap = num(cap)
        if cap > MAX_DEGREE:
            raise FockError(f"degree cap above {MAX_DEGREE} is not supported")
        entry = self._ycache.get((ukey, vkey))
        if entry is not None and entry[0] >= cap:
            if entry[0] == cap:
                return entry[1]
            limit = cap - self.degree(ukey) - self.degree(vkey)
            return {e: v for e, v in entry[1].items() if e <= limit}
        result = self._compute_Y(ukey, vkey, cap)
        self._ycache[(ukey, vkey)] = (cap, result)
        return result

    def _compute_Y(self, ukey: int, vkey: int, cap) -> Series:
        out: Series = {}
        first = self.first_mode(ukey)
        if first is None:
            g = self.gamma(ukey)
            d = self.gamma(vkey)
            sign = self.eps(g, d)
            e0 = self.pair(g, d)
            minus_g = tuple(-x for x in g)
            ann = self.annihilation_exp(minus_g, lambda k: ONE / k, {vkey: ONE})
            newg = tuple(a + b for a, b in zip(g, d))
            for m, vd in ann.items():
                for key, c in vd.items():
                    key = self.with_gamma(key, newg)
                    budget = cap - self.degree(key)
                    if budget < 0:
                        continue
                    for K, cv in self.creation_exp(g, ONE, {key: c * sign}, budget).items():
                        series_add(out, e0 - m + K, cv)
            return out
        n, i = first
        uprime = ukey - self.mode_bit(n, i)
        unit = tuple(ONE if j == i else ZERO for j in range(self.rank))
        wt_up = self.degree(uprime)
        wt_v = self.degree(vkey)
        # creation part: sum_{k <= -n} binom(-k-1, n-1) z^{-k-n} b_i(k) Y(u', z) v
        inner = self.Y_key(uprime, vkey, cap - n)
        for e, vd in inner.items():
            room = cap - (wt_up + wt_v + e)
            if room < n:
                continue
            for k in range(n, int(floor(room)) + 1):
                coef = comb(k - 1, n - 1)
                bit = self.mode_bit(k, i)
                series_add(out, e + k - n, {key + bit: c * coef for key, c in vd.items()})
        # annihilation part: sum_{k >= 0} (-1)^{n-1} binom(k+n-1, n-1) z^{-k-n} Y(u', z) b_i(k) v
        for k in range(0, self.max_mode(vkey) + 1):
            acted = self.heis_key(unit, k, vkey)
            if not acted:
                continue
            coef = (-1) ** (n - 1) * comb(k + n - 1, n - 1)
            for key, c in acted.items():
                for e, vd in self.Y_key(uprime, key, cap).items():
                    series_add(out, e - k - n, vd, c * coef)
        return out

    def Y(self, u: Mapping, v: Mapping, cap) -> Series:
        """Y(u, z) v for dict-vectors, terms with output degree <= cap."""
        out: Series = {}
        for uk, uc in u.items():
            for vk, vc in v.items():
                for e, vd in self.Y_key(uk, vk, cap).items():
                    series_add(out, e, vd, uc * vc)
        return out

    def Y_exponent_cap(self, u: Mapping, v: Mapping, max_exponent) -> Series:
        """Y(u, z) v keeping only exponents <= max_exponent (u, v need not be homogeneous)."""
        out: Series = {}
        max_exponent = num(max_exponent)
        for uk, uc in u.items():
            for vk, vc in v.items():
                cap = self.degree(uk) + self.degree(vk) + max_exponent
                if cap < 0:
                    continue
                for e, vd in self.Y_key(uk, vk, cap).items():
                    series_add(out, e, vd, uc * vc)
        return out

    # -- Delta operator ------------------------------------------------------
    def delta(self, alpha, vd: Mapping, *, sign_flip: bool = False) -> Series:
        """Delta(alpha, z) vd as an exact finite Laurent series.

        ``sign_flip`` replaces ``(-z)^{-k}`` by ``z^{-k}`` inside the exponential,
        which is a deliberately wrong operator used by mutation tests.
        """
        alpha = self.vec(alpha)
        if sign_flip:
            coeff = lambda k: -ONE / k  # noqa: E731
        else:
            coeff = lambda k: (-ONE) ** (k + 1) / k  # noqa: E731
        out: Series = {}
        for key, c in vd.items():
            lead = self.pair(alpha, self.gamma(key))
            for m, v in self.annihilation_exp(alpha, coeff, {key: c}).items():
                series_add(out, lead - m, v)
        return out

    def delta_negated(self, alpha, vd: Mapping) -> Series:
        """Delta(alpha, -z) vd with the principal branch for (-z)^{alpha(0)}."""
        alpha = self.vec(alpha)
        out: Series = {}
        for key, c in vd.items():
            lead = self.pair(alpha, self.gamma(key))
            phase = neg_power(lead)
            for m, v in self.annihilation_exp(alpha, lambda k: -ONE / k, {key: c}).items():
                series_add(out, lead - m, v, phase)
        return out

    # -- Virasoro ------------------------------------------------------------
    def omega(self) -> dict:
        """Conformal vector 1/2 sum_ij Ginv_ij b_i(-1) b_j(-1) 1."""
        out: dict = {}
        gi = self.gram_inv
        for i in range(self.rank):
            for j in range(self.rank):
                if gi[i][j]:
                    k = self.key([(1, i), (1, j)])
                    out[k] = out.get(k, ZERO) + gi[i][j] / 2
        return {k: c for k, c in out.items() if c}

    def vacuum(self) -> dict:
        return {self.key(): ONE}

    def virasoro_mode(self, n: int, vd: Mapping) -> dict:
        """L(n) vd computed as the z^{-n-2} coefficient of Y(omega, z) vd."""
        out: dict = {}
        om = self.omega()
        for key, c in vd.items():
            cap = self.degree(key) - n
            if cap < 0:
                continue
            series = self.Y(om, {key: c}, cap)
            vd_add(out, series.get(mpq(-n - 2), {}))
        return out

    def L0(self, vd: Mapping) -> dict:
        return {k: c * self.degree(k) for k, c in vd.items() if self.degree(k)}

    def L_minus1(self, vd: Mapping) -> dict:
        return self.virasoro_mode(-1, vd)


def _mode_multisets(max_total: int, rank: int) -> list[tuple]:
    """All sorted multisets of (n, i) with sum n <= max_total."""
    parts = [(n, i) for n in range(1, max_total + 1) for i in range(rank)]
    out: list = []

    def rec(start: int, remaining: int, acc: list):
        out.append(tuple(acc))
        for idx in range(start, len(parts)):
            n, i = parts[idx]
            if n <= remaining:
                acc.append((n, i))
                rec(idx, remaining - n, acc)
                acc.pop()

    rec(0, max_total, [])
    return out


# ---------------------------------------------------------------------------
# public value types


@dataclass(frozen=True, eq=False)
class FockVector:
    """An exact vector of a :class:`FockSpace` (finite basis expansion)."""

    space: FockSpace
    terms: tuple

    @classmethod
    def from_dict(cls, space: FockSpace, vd: Mapping) -> "FockVector":
        return cls(space, tuple(sorted((k, c) for k, c in vd.items() if c)))

    @property
    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = self.as_dict
        vd_add(out, other.as_dict)
        return FockVector.from_dict(self.space, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        out = self.as_dict
        vd_add(out, other.as_dict, -ONE)
        return FockVector.from_dict(self.space, out)

    def __mul__(self, scalar) -> "FockVector":
        return FockVector.from_dict(self.space, vd_scale(self.as_dict, num(scalar)))

    __rmul__ = __mul__

    def __neg__(self) -> "FockVector":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(k for k, _ in self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self):
        d = self.space.vd_degree(self.as_dict)
        return None if d is None else frac(d)

    def coefficient(self, modes=(), gamma=None):
        """Coefficient of one basis element (0 if absent), as a Fraction when rational."""
        c = self.as_dict.get(self.space.key(modes, gamma), ZERO)
        return c if isinstance(c, Cyclotomic) else frac(c)

    def to_json(self) -> dict:
        return {self.space.key_str(k): scalar_json(c) for k, c in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "FockVector(0)"
        body = " + ".join(f"({scalar_str(c)})*[{self.space.key_str(k)}]" for k, c in self.terms)
        return f"FockVector({body})"


@dataclass(frozen=True)
class LaurentSeries:
    """Finite Laurent expansion sum_e z^e * vector_e with rational exponents."""

    space: FockSpace
    coefficients: tuple  # ((exponent, FockVector), ...) sorted by exponent

    @classmethod
    def from_series(cls, space: FockSpace, series: Mapping) -> "LaurentSeries":
        items = []
        for e in sorted(series):
            vd = series[e]
            if vd:
                items.append((frac(e), FockVector.from_dict(space, vd)))
        return cls(space, tuple(items))

    def coefficient(self, exponent) -> FockVector:
        e = frac(exponent)
        for ex, v in self.coefficients:
            if ex == e:
                return v
        return FockVector(self.space, ())

    @property
    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self.coefficients]

    def to_json(self) -> list:
        return [{"exponent": frac_str(e), "vector": v.to_json()} for e, v in self.coefficients]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class LaurentOperator:
    """A degree-bounded operator slice ``v -> sum_e z^e A_e v``.

    ``action(vd, cap)`` must return a series with all terms of output degree
    at most ``cap``; ``cutoff`` is how far above the input degree we look.
    """

    def __init__(self, space: FockSpace, action: Callable[[dict, object], Series], cutoff: int):
        if cutoff < 0:
            raise FockError("cutoff must be non-negative")
        self.space = space
        self.action = action
        self.cutoff = cutoff

    def apply(self, v: FockVector) -> LaurentSeries:
        out: Series = {}
        for key, c in v.terms:
            cap = self.space.degree(key) + self.cutoff
            for e, vd in self.action({key: c}, cap).items():
                series_add(out, e, vd)
        return LaurentSeries.from_series(self.space, out)


# ---------------------------------------------------------------------------
# serialization


def scalar_str(c) -> str:
    if isinstance(c, Cyclotomic):
        return repr(c)
    return frac_str(frac(c))


def scalar_json(c):
    if isinstance(c, Cyclotomic):
        return {"conductor": c.n, "power_basis": [frac_str(x) for x in c.coeffs]}
    return frac_str(frac(c))


# ---------------------------------------------------------------------------
# module-level operations


def vacuum(space: FockSpace) -> FockVector:
    return FockVector.from_dict(space, space.vacuum())


def virasoro(space: FockSpace) -> FockVector:
    return FockVector.from_dict(space, space.omega())


def heis_mode(space: FockSpace, h, n: int, v: FockVector) -> FockVector:
    """h(n) v."""
    return FockVector.from_dict(space, space.heis(h, n, v.as_dict))


def heis_vector(space: FockSpace, h, n: int = 1) -> FockVector:
    """h(-n) 1."""
    return heis_mode(space, h, -n, vacuum(space))


def lattice_vector(space: FockSpace, gamma, modes: Iterable = ()) -> FockVector:
    return FockVector.from_dict(space, {space.key(modes, gamma): ONE})


def virasoro_L0(space: FockSpace, v: FockVector) -> FockVector:
    return FockVector.from_dict(space, space.L0(v.as_dict))


def virasoro_mode(space: FockSpace, n: int, v: FockVector) -> FockVector:
    return FockVector.from_dict(space, space.virasoro_mode(n, v.as_dict))


def E_minus(space: FockSpace, h, cutoff: int, scale=1) -> LaurentOperator:
    """E^-(scale*h, z), exact on all matrix elements up to ``cutoff`` above the input degree."""
    h = space.vec(h)

    def action(vd, cap):
        out: Series = {}
        for key, c in vd.items():
            for K, v in space.creation_exp(h, scale, {key: c}, cap - space.degree(key)).items():
                series_add(out, mpq(K), v)
        return out

    return LaurentOperator(space, action, cutoff)


def E_plus(space: FockSpace, h, cutoff: int = 0, scale=1) -> LaurentOperator:
    """E^+(scale*h, z); annihilation modes only, so the expansion is finite."""
    h = space.vec(h)
    s = num(scale)

    def action(vd, cap):
        out: Series = {}
        for M, v in space.annihilation_exp(h, lambda k: s / k, vd).items():
            series_add(out, mpq(-M), v)
        return out

    return LaurentOperator(space, action, cutoff)


def delta_apply(space: FockSpace, alpha, v: FockVector) -> LaurentSeries:
    """Delta(alpha, z) v = z^{alpha(0)} exp(sum_k alpha(k)/(-k) (-z)^{-k}) v, exactly."""
    return LaurentSeries.from_series(space, space.delta(alpha, v.as_dict))


def vertex_series(space: FockSpace, u: FockVector, v: FockVector, cutoff: int) -> LaurentSeries:
    """Y(u, z) v with every coefficient of output degree <= deg u + deg v + cutoff."""
    out: Series = {}
    for uk, uc in u.terms:
        for vk, vc in v.terms:
            cap = space.degree(uk) + space.degree(vk) + cutoff
            for e, vd in space.Y_key(uk, vk, cap).items():
                series_add(out, e, vd, uc * vc)
    return LaurentSeries.from_series(space, out)


def vertex_mode(space: FockSpace, u: FockVector, n, v: FockVector, max_denominator: int | None = None) -> FockVector:
    """u_n v: the coefficient of z^{-n-1} in Y(u, z) v."""
    n = num(n)
    if max_denominator is not None and max_denominator % int(n.denominator):
        raise FockError(f"exponent denominator {n.denominator} does not divide {max_denominator}")
    e = -n - 1
    out: dict = {}
    for uk, uc in u.terms:
        for vk, vc in v.terms:
            cap = space.degree(uk) + space.degree(vk) + e
            if cap < 0:
                continue
            series = space.Y_key(uk, vk, cap)
            vd_add(out, series.get(e, {}), uc * vc)
    return FockVector.from_dict(space, out)


def deformed_vertex(space: FockSpace, u: Mapping, alpha, v: Mapping, beta, max_exponent) -> Series:
    """Product of u (label alpha) with v (label beta) in the direct sum of deformed copies.

    Computes z^{<alpha,beta>} E^-(alpha, z) Y(Delta(beta, z) u, z) Delta(alpha, -z) v,
    keeping exponents <= max_exponent.  The identifications between the
    deformed copies act as the identity on vectors; the power
    z^{<alpha,beta>} is what remains of them once the zero modes acting on
    the copy labelled ``alpha`` are rewritten in terms of the undeformed ones.
    """
    alpha = space.vec(alpha)
    beta = space.vec(beta)
    max_exponent = num(max_exponent)
    shift = space.pair(alpha, beta)
    du = space.delta(beta, u)
    dv = space.delta_negated(alpha, v)
    room = max_exponent - shift
    # Collect Y(Delta(beta) u, z) Delta(alpha, -z) v first, then apply E^- once.
    pre: Series = {}
    for e1, uvd in du.items():
        for e2, vvd in dv.items():
            for e3, vd in space.Y_exponent_cap(uvd, vvd, room - e1 - e2).items():
                series_add(pre, e1 + e2 + e3, vd)
    out: Series = {}
    for e, vd in pre.items():
        for K, cv in space.creation_exp(alpha, ONE, vd, room - e).items():
            series_add(out, shift + e + K, cv)
    return out


def deformed_product(
    space: FockSpace, u: FockVector, alpha, v: FockVector, beta, cutoff: int
) -> LaurentSeries:
    """Deformed product of ``u`` (label ``alpha``) and ``v`` (label ``beta``).

    Exponents are kept up to ``cutoff`` above the lowest exponent that can
    occur, ``<alpha, beta> + <beta, gamma_u> + <alpha, gamma_v>`` minus the
    degrees of the inputs.
    """
    ud, vdict = u.as_dict, v.as_dict
    alpha = space.vec(alpha)
    beta = space.vec(beta)
    if not ud or not vdict:
        return LaurentSeries(space, ())
    lowest = min(
        space.pair(alpha, beta)
        + space.pair(beta, space.gamma(uk))
        + space.pair(alpha, space.gamma(vk))
        - space.degree(uk)
        - space.degree(vk)
        for uk in ud
        for vk in vdict
    )
    return LaurentSeries.from_series(space, deformed_vertex(space, ud, alpha, vdict, beta, lowest + cutoff))
