"""The direct sum of deformed copies of a lattice algebra and its Jacobi identity.

:class:`DeformedModel` realizes the direct sum of the deformed copies of a
lattice vertex operator algebra, one copy per label in a chosen finite set,
and evaluates the deformed product exactly.  :func:`check_jacobi` compares the
coefficient of ``z0^a z1^b z2^c`` on both sides of the generalized Jacobi
identity for a finite window of exponents.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm
from typing import Iterable, Sequence

import numpy as np

from .cocycle import GradedIndex, comm_exponent, eta, mod2
from .exact import Cyclotomic, frac, root_of_unity
from .fock import ONE, ZERO, FockSpace, Series, deformed_vertex, gen_binom, num, series_add, vd_add
from .lattice import RationalLattice

Labeled = tuple[tuple[Fraction, ...], int]  # (label, packed basis key)


@dataclass
class JacobiReport:
    """Outcome of a Jacobi identity sweep."""

    passed: bool
    triples: int
    coefficients: int
    seconds: float
    failure: dict | None = None
    conventions: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "triples": self.triples,
            "coefficients": self.coefficients,
            "seconds": round(self.seconds, 3),
            "failure": self.failure,
            "conventions": self.conventions,
        }


class DeformedModel:
    """Deformed copies ``V^(label)`` of the lattice algebra of ``space``.

    A labeled basis vector ``(label, key)`` has weight
    ``heisenberg degree + <gamma + label, gamma + label>/2``.
    """

    def __init__(self, space: FockSpace, labels: Iterable):
        self.space = space
        self.labels = [space.vec(x) for x in labels]
        self.form = RationalLattice(space.gram)
        self._cache: dict = {}
        self._rows: dict = {}
        self._col_ids: dict = {}
        self._cols: list = []

    def weight(self, label, key) -> Fraction:
        modes, gamma = self.space.unpack(key)
        shifted = tuple(g + a for g, a in zip(gamma, label))
        return sum((n for n, _ in modes), 0) + self.space.pair(shifted, shifted) / 2

    def index(self, label, key) -> GradedIndex:
        return GradedIndex(label, self.space.gamma(key))

    def basis(self, max_weight) -> list[Labeled]:
        """Labeled basis vectors of weight <= max_weight, ordered by (label, weight)."""
        max_weight = num(max_weight)
        out = []
        sp = self.space
        for label in self.labels:
            # weight >= V-degree - |<gamma,label>| - ...; enumerate generously then filter
            bound = 2 * max_weight + 2 * sp.pair(label, label) + 4
            for key in sp.basis(bound):
                if self.weight(label, key) <= max_weight:
                    out.append((label, key))
        return sorted(set(out), key=lambda lk: (lk[0], self.weight(*lk), sp.unpack(lk[1])))

    def product_key(self, u: Labeled, v: Labeled, max_exponent) -> Series:
        """Deformed product of two labeled basis vectors, exponents <= max_exponent."""
        max_exponent = num(max_exponent)
        ck = (u, v)
        entry = self._cache.get(ck)
        if entry is not None and entry[0] >= max_exponent:
            if entry[0] == max_exponent:
                return entry[1]
            return {e: x for e, x in entry[1].items() if e <= max_exponent}
        series = deformed_vertex(self.space, {u[1]: ONE}, u[0], {v[1]: ONE}, v[0], max_exponent)
        self._cache[ck] = (max_exponent, series)
        return series

    def row(self, u: Labeled, v: Labeled, exponent, vd: dict) -> "_Row":
        """Integer form of the ``exponent`` coefficient of the product of ``u`` and ``v``."""
        ck = (u, v, exponent)
        row = self._rows.get(ck)
        if row is None:
            ids = []
            for k in vd:
                cid = self._col_ids.get(k)
                if cid is None:
                    cid = len(self._cols)
                    self._col_ids[k] = cid
                    self._cols.append(k)
                ids.append(cid)
            ints, den = _to_integers(vd.values())
            row = _Row(len(self._rows), np.array(ids, dtype=np.int64), ints, den)
            self._rows[ck] = row
        return row

    def product(self, ulabel, uvd: dict, vlabel, vvd: dict, max_exponent) -> Series:
        out: Series = {}
        for uk, uc in uvd.items():
            for vk, vc in vvd.items():
                for e, x in self.product_key((ulabel, uk), (vlabel, vk), max_exponent).items():
                    series_add(out, e, x, uc * vc)
        return out


@lru_cache(maxsize=None)
def _signed_binom(top, j: int):
    """(-1)^j binom(top, j)."""
    val = gen_binom(top, j)
    return -val if j % 2 else val


def _coset_values(rep, bound) -> list[Fraction]:
    """All x with x = rep mod 1 and |x| <= bound."""
    rep = num(rep)
    r = rep - floor(rep)
    lo = -int(bound) - 1
    return [r + k for k in range(lo, int(bound) + 2) if abs(r + k) <= bound]


@dataclass(frozen=True)
class _Row:
    """A sparse rational vector stored as integer numerators over one denominator."""

    rid: int
    ids: np.ndarray
    ints: list
    den: int


def _iterated(model: DeformedModel, first: Labeled, second: Labeled, third: Labeled, inner_max, total_max):
    """Terms of Y(first, x1) Y(second, x2) third as ``(e1, e2, coefficient, row)``.

    The ``(e1, e2)`` coefficient is the sum of ``coefficient * row`` over its
    terms.  Inner exponents e2 <= inner_max, outer exponents e1 <= total_max - e2.
    """
    add_label = tuple(a + b for a, b in zip(second[0], third[0]))
    out = []
    for e2, x in model.product_key(second, third, inner_max).items():
        for key, c in x.items():
            middle = (add_label, key)
            for e1, y in model.product_key(first, middle, total_max - e2).items():
                out.append((e1, e2, c, model.row(first, middle, e1, y)))
    return out


def _nested(model: DeformedModel, u: Labeled, v: Labeled, w: Labeled, inner_max, total_max):
    """Terms of Y(Y(u, x0) v, x2) w as ``(e0, e2, coefficient, row)``."""
    add_label = tuple(a + b for a, b in zip(u[0], v[0]))
    out = []
    for e0, x in model.product_key(u, v, inner_max).items():
        for key, c in x.items():
            middle = (add_label, key)
            for e2, y in model.product_key(middle, w, total_max - e0).items():
                out.append((e0, e2, c, model.row(middle, w, e2, y)))
    return out


def _to_integers(values) -> tuple[list[int], int]:
    """Clear denominators: returns integer numerators and the common denominator."""
    values = list(values)
    den = 1
    for x in values:
        den = lcm(den, int(x.denominator))
    return [int(x * den) for x in values], den


def _int_matrix(shape, entries, dtype):
    mat = np.zeros(shape, dtype=dtype)
    for (i, j), x in entries.items():
        mat[i, j] = x
    return mat


class _Block:
    """All terms on one antidiagonal ``s = e_outer + e_inner``."""

    def __init__(self):
        self.combos: dict = {}  # (tag, e_first, e_second) -> combo index
        self.rows: dict = {}  # rid -> local row index
        self.row_data: list = []
        self.coupling: dict = {}  # (combo, row) -> rational coefficient

    def add(self, tag: str, e1, e2, coef, row: _Row) -> None:
        ci = self.combos.setdefault((tag, e1, e2), len(self.combos))
        ri = self.rows.get(row.rid)
        if ri is None:
            ri = len(self.row_data)
            self.rows[row.rid] = ri
            self.row_data.append(row)
        self.coupling[(ci, ri)] = self.coupling.get((ci, ri), ZERO) + coef / row.den

    def product(self, weights: list[dict], cols_out: list):
        """Integer matrix proportional to ``weights @ coupling @ rows``.

        ``weights[r]`` maps combo indices to rationals.  Returns the global
        column ids and the product; the proportionality constant is positive.
        """
        all_ids = np.concatenate([r.ids for r in self.row_data])
        uniq, inverse = np.unique(all_ids, return_inverse=True)
        row_of = np.repeat(np.arange(len(self.row_data)), [len(r.ids) for r in self.row_data])
        m_ints = [x for r in self.row_data for x in r.ints]
        d_keys = list(self.coupling)
        d_ints, _ = _to_integers(self.coupling[k] for k in d_keys)
        w_keys = [(r, ci) for r, w in enumerate(weights) for ci in w]
        w_ints, _ = _to_integers(weights[r][ci] for r, ci in w_keys)
        max_m = max(map(abs, m_ints), default=0)
        max_d = max(map(abs, d_ints), default=0)
        max_w = max(map(abs, w_ints), default=0)
        big = max_w * max_d * max_m * len(self.row_data) * len(self.combos)
        dtype = np.int64 if big < 2**62 else object
        mat = np.zeros((len(self.row_data), len(uniq)), dtype=dtype)
        mat[row_of, inverse] = np.array(m_ints, dtype=dtype)
        coupling = _int_matrix((len(self.combos), len(self.row_data)), dict(zip(d_keys, d_ints)), dtype)
        wmat = _int_matrix((len(weights), len(self.combos)), dict(zip(w_keys, w_ints)), dtype)
        cols_out.extend(uniq.tolist())
        return wmat @ (coupling @ mat)


def jacobi_coefficients(
    model: DeformedModel,
    u: Labeled,
    v: Labeled,
    w: Labeled,
    bound: int = 4,
    *,
    commutator_phase=None,
    swap_phase_exponent=ZERO,
    commutator_shift=ZERO,
):
    """Yield ``((a, b, c), residual)`` for every window coefficient.

    The residual is a dict-vector proportional to ``lhs - rhs`` (empty when
    the coefficient identity holds).  ``commutator_phase`` overrides the
    exponent of the commutator scalar (default: the commutator map of the
    grading); ``swap_phase_exponent`` multiplies the second term by
    ``exp(-pi i s eta)``, a knob for testing alternative branch conventions;
    ``commutator_shift`` is added to the commutator exponent (``1`` flips its sign).
    """
    form = model.form
    iu, iv, iw = (model.index(*x) for x in (u, v, w))
    e_uv = eta(iu, iv, form)
    e_uw = eta(iu, iw, form)
    e_vw = eta(iv, iw, form)
    c_exp = comm_exponent(iu, iv, form) if commutator_phase is None else frac(commutator_phase)
    c_exp += frac(commutator_shift)
    c_scalar = num(root_of_unity(mod2(c_exp - frac(swap_phase_exponent) * e_uv)))

    a_vals = _coset_values(-e_uv, bound)
    b_vals = _coset_values(-e_uw, bound)
    c_vals = _coset_values(-e_vw, bound)
    top = max(a_vals) + max(b_vals) + max(c_vals) + 1

    # Every term of the (a, b, c) coefficient sits on the antidiagonal
    # s = a + b + c + 1 of its source, and all vectors there share one output
    # weight.  Each antidiagonal is checked with one exact matrix product.
    blocks: dict = {}
    sources = (
        ("yy", _iterated(model, u, v, w, max(c_vals), top)),
        ("zz", _iterated(model, v, u, w, max(b_vals), top)),  # exponents (e_v, e_u)
        ("nest", _nested(model, u, v, w, max(a_vals), top)),
    )
    for tag, terms in sources:
        for e1, e2, coef, row in terms:
            block = blocks.get(e1 + e2)
            if block is None:
                block = blocks[e1 + e2] = _Block()
            block.add(tag, e1, e2, coef, row)

    # The swapped term carries c_scalar.  When it is not rational, 1 and
    # c_scalar are linearly independent over Q, so the identity splits into a
    # rational part and a part multiplying c_scalar; both must vanish.  This
    # keeps the arithmetic rational.
    split = isinstance(c_scalar, Cyclotomic)
    plain: dict = {}  # s -> list of ((a, b, c), weights over combos)
    twisted: dict = {}
    for a, b, c in itertools.product(a_vals, b_vals, c_vals):
        s = a + b + c + 1
        block = blocks.get(s)
        if block is None:
            continue
        weights: dict = {}
        swapped: dict = weights if not split else {}
        top_binom = -a - 1  # n + eta in the first two terms
        n = -a - 1 - num(e_uv)
        if n.denominator != 1:
            raise AssertionError("grading mismatch in the first exponent")
        swap_scale = ONE if int(n) % 2 else -ONE
        if not split:
            swap_scale = swap_scale * c_scalar
        for (tag, e1, e2), ci in block.combos.items():
            if tag == "yy":
                if e2 <= c:
                    weights[ci] = _signed_binom(top_binom, int(c - e2))
            elif tag == "zz":
                if e2 <= b:
                    swapped[ci] = swap_scale * _signed_binom(top_binom, int(b - e2))
            elif e1 <= a:
                weights[ci] = -_signed_binom(a + b - e1, int(a - e1))
        plain.setdefault(s, []).append(((a, b, c), weights))
        if split:
            twisted.setdefault(s, []).append(((a, b, c), swapped))

    residuals: dict = {}
    for table, factor in ((plain, ONE), (twisted, c_scalar)):
        for s, entries in table.items():
            if not any(wt for _, wt in entries):
                continue
            cols: list = []
            product = blocks[s].product([wt for _, wt in entries], cols)
            for (abc, _), line in zip(entries, product):
                nz = np.flatnonzero(line)
                if len(nz):
                    slot = residuals.setdefault(abc, {})
                    vd_add(slot, {model._cols[cols[j]]: num(int(line[j])) * factor for j in nz})
    for a, b, c in itertools.product(a_vals, b_vals, c_vals):
        yield (a, b, c), residuals.get((a, b, c), {})


def check_jacobi(
    model: DeformedModel,
    vectors: Sequence[Labeled],
    bound: int = 4,
    *,
    commutator_phase=None,
    swap_phase_exponent=ZERO,
    commutator_shift=ZERO,
    stop_on_failure: bool = True,
) -> JacobiReport:
    """Sweep all ordered triples of ``vectors``."""
    start = time.perf_counter()
    triples = 0
    count = 0
    first = None
    for u, v, w in itertools.product(vectors, repeat=3):
        triples += 1
        for abc, diff in jacobi_coefficients(
            model,
            u,
            v,
            w,
            bound,
            commutator_phase=commutator_phase,
            swap_phase_exponent=swap_phase_exponent,
            commutator_shift=commutator_shift,
        ):
            count += 1
            if diff:
                failure = {
                    "u": describe(model.space, u),
                    "v": describe(model.space, v),
                    "w": describe(model.space, w),
                    "exponents": [str(x) for x in abc],
                    "terms": len(diff),
                }
                if stop_on_failure:
                    return JacobiReport(False, triples, count, time.perf_counter() - start, failure)
                first = first or failure
    return JacobiReport(first is None, triples, count, time.perf_counter() - start, first)


def describe(space: FockSpace, lk: Labeled) -> str:
    label, key = lk
    return f"label=({','.join(str(x) for x in label)}) {space.key_str(key)}"
