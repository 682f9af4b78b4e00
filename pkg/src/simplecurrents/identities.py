"""Coefficient-exact checks of operator identities on the truncated Fock space.

Every check expands both sides of an identity as a finite formal series in
one or two variables, restricted to a window in which the truncation is
provably exact, and compares the coefficients.  The result is an
:class:`IdentityReport` that records how many coefficients were compared and
the first one that disagreed.

Two-variable series are dicts keyed by exponent pairs.  Expansions of
``(z2 + z1)^p`` and ``(z2 - z1)^p`` are always in nonnegative powers of the
first variable, matching the usual formal-calculus convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor
from typing import Iterable, Mapping, Sequence

from .exact import frac
from .fock import ONE, ZERO, FockSpace, Series, gen_binom, num, series_add, vd_add, vd_scale


@dataclass
class IdentityReport:
    """Outcome of one identity check."""

    name: str
    passed: bool
    checked: int
    cutoff: int
    failure: dict | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "cutoff": self.cutoff,
            "failure": self.failure,
        }


def _exp_str(e) -> str:
    if isinstance(e, tuple):
        return "(" + ",".join(str(frac(x)) for x in e) + ")"
    return str(frac(e))


class _Tally:
    """Accumulates coefficient comparisons and remembers the first mismatch."""

    def __init__(self, name: str, cutoff: int, space: FockSpace):
        self.name = name
        self.cutoff = cutoff
        self.space = space
        self.checked = 0
        self.failure: dict | None = None

    def compare(self, lhs: Mapping, rhs: Mapping, context: dict | None = None, window=None) -> bool:
        ok = True
        for exp in set(lhs) | set(rhs):
            if window is not None and not window(exp):
                continue
            self.checked += 1
            diff = dict(lhs.get(exp, {}))
            vd_add(diff, rhs.get(exp, {}), -ONE)
            if diff and self.failure is None:
                key = next(iter(diff))
                self.failure = {
                    "exponent": _exp_str(exp),
                    "basis": self.space.key_str(key),
                    "difference": str(frac(diff[key])) if not hasattr(diff[key], "coeffs") else repr(diff[key]),
                    **(context or {}),
                }
            ok = ok and not diff
        return ok

    def fail(self, info: dict) -> None:
        self.checked += 1
        if self.failure is None:
            self.failure = info

    def ok(self) -> None:
        self.checked += 1

    def report(self) -> IdentityReport:
        return IdentityReport(self.name, self.failure is None, self.checked, self.cutoff, self.failure)


def _default_vectors(space: FockSpace, vectors) -> list[int]:
    return list(space.basis(2)) if vectors is None else list(vectors)


def _signed_binom(top, j: int):
    """Coefficient of x^j in (1 - x)^top."""
    val = gen_binom(top, j)
    return -val if j % 2 else val


# ---------------------------------------------------------------------------
# Heisenberg exponentials


def check_commutation(
    space: FockSpace, h, s, t, order: int = 8, vectors: Iterable[int] | None = None, *, mutate: bool = False
) -> IdentityReport:
    """E^+(s h, z1) E^-(t h, z2) = (1 - z2/z1)^{-<h,h> s t} E^-(t h, z2) E^+(s h, z1).

    Coefficients of ``z1^{-p} z2^q`` with ``p, q <= order`` are compared on
    each basis vector in ``vectors`` (default: degree at most 2).  ``mutate``
    flips the sign of the exponent, which the check must reject.
    """
    h = space.vec(h)
    s, t = num(s), num(t)
    power = -space.pair(h, h) * s * t
    if mutate:
        power = -power
    tally = _Tally("E+ E- commutation", order, space)
    ann = lambda k: s / k  # noqa: E731
    for key in _default_vectors(space, vectors):
        start = {key: ONE}
        lhs: dict = {}
        for q, x in space.creation_exp(h, t, start, order).items():
            for p, y in space.annihilation_exp(h, ann, x).items():
                if p <= order:
                    series_add(lhs, (p, q), y)
        normal: dict = {}
        for p, x in space.annihilation_exp(h, ann, start).items():
            for q, y in space.creation_exp(h, t, x, order).items():
                series_add(normal, (p, q), y)
        rhs: dict = {}
        for (p, q), y in normal.items():
            for j in range(order + 1 - max(p, q)):
                series_add(rhs, (p + j, q + j), y, _signed_binom(power, j))
        tally.compare(lhs, rhs, {"vector": space.key_str(key)})
    return tally.report()


def check_vertex_of_e_minus(space: FockSpace, h, cutoff: int = 5, vectors: Iterable[int] | None = None) -> IdentityReport:
    """Y(E^-(h,z1) a, z2) against its factorization through E^- and E^+ operators.

    The right-hand side is
    ``E^-(h,z1+z2) E^-(-h,z2) Y(a,z2) z2^{-h(0)} E^+(h,z2) (z2+z1)^{h(0)} E^+(-h,z2+z1)``.
    Coefficients of ``z1^m z2^e`` are compared for ``m <= cutoff`` and
    ``m + e <= cutoff`` (output degree at most ``deg a + deg b + cutoff``);
    every operator to the left of ``Y`` only raises ``m + e``, so the window is exact.
    """
    h = space.vec(h)
    n = cutoff
    vecs = _default_vectors(space, vectors)
    tally = _Tally("vertex operator of E^- a", cutoff, space)
    window = lambda me: me[0] <= n and me[0] + me[1] <= n  # noqa: E731
    for a in vecs:
        lifted = space.creation_exp(h, ONE, {a: ONE}, n)
        for b in vecs:
            lhs: dict = {}
            for m, x in lifted.items():
                for e, y in space.Y_exponent_cap(x, {b: ONE}, n - m).items():
                    series_add(lhs, (m, e), y)
            lam = space.pair(h, space.gamma(b))
            stage: dict = {}
            for big_m, v in space.annihilation_exp(h, lambda k: -ONE / k, {b: ONE}).items():
                p = lam - big_m
                for j in range(n + 1):
                    series_add(stage, (j, p - j), v, gen_binom(p, j))
            shifted: dict = {}
            for (m, e), v in stage.items():
                for big_m, w in space.annihilation_exp(h, lambda k: ONE / k, v).items():
                    series_add(shifted, (m, e - big_m - lam), w)
            acted: dict = {}
            for (m, e), v in shifted.items():
                for e2, w in space.Y_exponent_cap({a: ONE}, v, n - m - e).items():
                    series_add(acted, (m, e + e2), w)
            lowered: dict = {}
            for (m, e), v in acted.items():
                for k, w in space.creation_exp(h, -ONE, v, n - m - e).items():
                    series_add(lowered, (m, e + k), w)
            rhs: dict = {}
            for (m, e), v in lowered.items():
                for k, w in space.creation_exp(h, ONE, v, n - m - e).items():
                    for i in range(min(k, n - m) + 1):
                        series_add(rhs, (m + i, e + k - i), w, comb(k, i))
            tally.compare(lhs, rhs, {"a": space.key_str(a), "b": space.key_str(b)}, window)
    return tally.report()


def check_e_minus_conjugation(space: FockSpace, h, cutoff: int = 5, vectors: Iterable[int] | None = None) -> IdentityReport:
    """E^-(h,z1) Y(a,z2) E^-(-h,z1) = Y(Delta(-h, z2-z1) Delta(h,z2) a, z2).

    Same window as :func:`check_vertex_of_e_minus`.
    """
    h = space.vec(h)
    neg = tuple(-x for x in h)
    n = cutoff
    vecs = _default_vectors(space, vectors)
    tally = _Tally("E^- conjugation of vertex operators", cutoff, space)
    window = lambda me: me[0] <= n and me[0] + me[1] <= n  # noqa: E731
    for a in vecs:
        deformed: list = []
        for e1, x in space.delta(h, {a: ONE}).items():
            for p, y in space.delta(neg, x).items():
                deformed.append((e1, p, y))
        for b in vecs:
            lhs: dict = {}
            for m1, y in space.creation_exp(h, -ONE, {b: ONE}, n).items():
                for e, w in space.Y_exponent_cap({a: ONE}, y, n - m1).items():
                    for k, x in space.creation_exp(h, ONE, w, n - m1 - e).items():
                        series_add(lhs, (m1 + k, e), x)
            rhs: dict = {}
            for e1, p, y in deformed:
                inner = space.Y_exponent_cap(y, {b: ONE}, n - e1 - p)
                for j in range(n + 1):
                    c = _signed_binom(p, j)
                    for e3, w in inner.items():
                        series_add(rhs, (j, e1 + p - j + e3), w, c)
            tally.compare(lhs, rhs, {"a": space.key_str(a), "b": space.key_str(b)}, window)
    return tally.report()


# ---------------------------------------------------------------------------
# axioms of the Delta operator


@dataclass
class DeltaAxiomsReport:
    alpha: tuple
    cutoff: int
    finiteness: IdentityReport
    vacuum: IdentityReport
    translation: IdentityReport
    associativity: IdentityReport

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports())

    def reports(self) -> list[IdentityReport]:
        return [self.finiteness, self.vacuum, self.translation, self.associativity]

    def to_json(self) -> dict:
        return {
            "alpha": [str(frac(x)) for x in self.alpha],
            "cutoff": self.cutoff,
            "passed": self.passed,
            "axioms": {r.name: r.to_json() for r in self.reports()},
        }


def check_delta_axioms(
    space: FockSpace, alpha, cutoff: int = 6, vectors: Iterable[int] | None = None, *, sign_flip: bool = False
) -> DeltaAxiomsReport:
    """Check the four axioms of Delta(alpha, z) on sample vectors.

    * finiteness: ``Delta(z) a`` is a finite sum of powers ``z^{<alpha,gamma_a> + k}``;
    * vacuum: ``Delta(z) 1 = 1``;
    * translation: ``[L(-1), Delta(z)] = -d/dz Delta(z)``;
    * associativity: ``Y(Delta(z2+z0) a, z0) Delta(z2) = Delta(z2) Y(a, z0)``,
      compared for all ``z0`` exponents up to ``cutoff``.

    ``sign_flip`` runs the checks against the deliberately wrong operator of
    :meth:`FockSpace.delta`, which must be caught.
    """
    alpha = space.vec(alpha)
    vecs = _default_vectors(space, vectors)

    def delta(vd):
        return space.delta(alpha, vd, sign_flip=sign_flip)

    finite = _Tally("finiteness", cutoff, space)
    for a in vecs:
        lead = space.pair(alpha, space.gamma(a))
        bad = [e for e in delta({a: ONE}) if num(e - lead).denominator != 1]
        if bad:
            finite.fail({"vector": space.key_str(a), "exponent": _exp_str(bad[0])})
        else:
            finite.ok()

    vac = _Tally("vacuum", cutoff, space)
    vac.compare(delta(space.vacuum()), {ZERO: space.vacuum()})

    trans = _Tally("translation", cutoff, space)
    for a in vecs:
        series = delta({a: ONE})
        lhs: dict = {}
        for e, x in series.items():
            series_add(lhs, e, space.L_minus1(x))
        for e, x in delta(space.L_minus1({a: ONE})).items():
            series_add(lhs, e, x, -ONE)
        rhs: dict = {}
        for e, x in series.items():
            if e:
                series_add(rhs, e - 1, x, -e)
        trans.compare(lhs, rhs, {"vector": space.key_str(a)})

    assoc = _Tally("associativity", cutoff, space)
    for a in vecs:
        da = delta({a: ONE})
        for b in vecs:
            db = delta({b: ONE})
            rhs: dict = {}
            for e0, x in space.Y_exponent_cap({a: ONE}, {b: ONE}, cutoff).items():
                for q, y in delta(x).items():
                    series_add(rhs, (e0, q), y)
            lhs: dict = {}
            for p, x in da.items():
                for q, y in db.items():
                    # Y(x, z0) y has exponents >= -(deg x + deg y), so j is bounded.
                    top = cutoff + int(floor(space.vd_degree(x) + space.vd_degree(y)))
                    inner = space.Y_exponent_cap(x, y, cutoff)
                    for j in range(top + 1):
                        c = gen_binom(p, j)
                        if not c:
                            continue
                        for e, w in inner.items():
                            if j + e <= cutoff:
                                series_add(lhs, (j + e, p - j + q), w, c)
            assoc.compare(lhs, rhs, {"a": space.key_str(a), "b": space.key_str(b)})
    return DeltaAxiomsReport(alpha, cutoff, finite.report(), vac.report(), trans.report(), assoc.report())


# ---------------------------------------------------------------------------
# skew-symmetry and nilpotency


def check_skew_symmetry(space: FockSpace, cutoff: int = 4, vectors: Iterable[int] | None = None) -> IdentityReport:
    """Y(u,z)v = e^{z L(-1)} Y(v,-z)u for algebra vectors, exponents up to ``cutoff``."""
    vecs = _default_vectors(space, vectors)
    tally = _Tally("skew-symmetry", cutoff, space)
    for u in vecs:
        for v in vecs:
            lhs = space.Y_exponent_cap({u: ONE}, {v: ONE}, cutoff)
            swapped = space.Y_exponent_cap({v: ONE}, {u: ONE}, cutoff)
            rhs: dict = {}
            for e, x in swapped.items():
                if num(e).denominator != 1:
                    raise ValueError("skew-symmetry needs integral exponents (algebra vectors)")
                term = vd_scale(x, ONE if int(e) % 2 == 0 else -ONE)
                j = 0
                while e + j <= cutoff and term:
                    series_add(rhs, e + j, term, ONE / factorial(j))
                    term = space.L_minus1(term)
                    j += 1
            tally.compare(lhs, rhs, {"u": space.key_str(u), "v": space.key_str(v)})
    return tally.report()


def check_nilpotency(space: FockSpace, field: Mapping, cutoff: int = 4, vectors: Iterable[int] | None = None) -> IdentityReport:
    """All modes of Y(x, z)^2 vanish on ``vectors``, for a field ``x`` with commuting modes.

    With ``x_m x_n w = x_n x_m w`` the product ``Y(x,z)^2 w`` is well defined
    and its ``z^{s}`` coefficient is the finite sum of ``x_m x_n w`` over
    exponent pairs ``(e1, e2)`` with ``e1 + e2 = s`` and both exponents at
    least the lowest exponent of ``Y(x,z) w``.  The check verifies the
    commutation of modes on the window as well as the vanishing of the sums;
    output degrees up to ``deg w + 2 deg x + cutoff`` are covered.
    """
    vecs = _default_vectors(space, vectors)
    tally = _Tally("square of a field vanishes", cutoff, space)
    deg_x = space.vd_degree(field)
    top = cutoff - 2 * deg_x  # bound on e1 + e2
    for w in vecs:
        low_bound = -int(floor(deg_x + space.degree(w))) - 1
        first = space.Y_exponent_cap(field, {w: ONE}, top - low_bound)
        if not first:
            tally.ok()
            continue
        lowest = min(first)
        pairs: dict = {}
        for e2, x in first.items():
            if e2 > top - lowest:
                continue
            for e1, y in space.Y_exponent_cap(field, x, top - e2).items():
                pairs[(e1, e2)] = y
        ctx = {"vector": space.key_str(w)}
        for (e1, e2), y in pairs.items():
            if e1 < lowest:
                tally.compare({0: y}, {}, {**ctx, "modes": _exp_str((e1, e2)), "reason": "modes do not commute"})
            elif e1 <= top - lowest:
                tally.compare({0: y}, {0: pairs.get((e2, e1), {})}, {**ctx, "modes": _exp_str((e1, e2)), "reason": "modes do not commute"})
        sums: dict = {}
        for (e1, e2), y in pairs.items():
            if e1 >= lowest:
                series_add(sums, e1 + e2, y)
        totals = {s for (e1, e2) in pairs for s in [e1 + e2] if e1 >= lowest}
        for s in totals:
            tally.compare({s: sums.get(s, {})}, {}, {**ctx, "reason": "square does not vanish"})
    return tally.report()


# ---------------------------------------------------------------------------
# the deformed module: characters and explicit isomorphisms


def deformed_weights(space: FockSpace, beta, keys: Iterable[int]) -> dict[int, Fraction]:
    """L(0) of the deformed module ``(V, Y(Delta(beta,z) . , z))`` on basis keys.

    The deformed ``L(0)`` is the ``z^{-2}`` coefficient of
    ``Y(Delta(beta,z) omega, z)``; it is computed from the vertex operators and
    must act diagonally on the monomial basis.
    """
    beta = space.vec(beta)
    dom = space.delta(beta, space.omega())
    out = {}
    for key in keys:
        image: dict = {}
        for e, x in dom.items():
            target = -2 - e
            series = space.Y_exponent_cap(x, {key: ONE}, target)
            vd_add(image, series.get(target, {}))
        if set(image) - {key}:
            raise ValueError(f"deformed L(0) is not diagonal on {space.key_str(key)}")
        out[key] = frac(image.get(key, ZERO))
    return out


def deformed_character(space: FockSpace, beta, max_weight, degree_slack: int = 3) -> dict[Fraction, int]:
    """Graded dimension of the deformed module up to ``max_weight``.

    Basis vectors of undeformed degree at most ``max_weight + degree_slack``
    are examined; a vector missed by the slack would make the character too
    small, so a comparison with an independent count cannot pass by accident.
    """
    max_weight = frac(max_weight)
    keys = space.basis(max_weight + degree_slack)
    counts: dict[Fraction, int] = {}
    for key, wt in deformed_weights(space, beta, keys).items():
        if wt <= max_weight:
            counts[wt] = counts.get(wt, 0) + 1
    return dict(sorted(counts.items()))


def pi_bar(space: FockSpace, gamma, vd: Mapping) -> dict:
    """The isomorphism from the copy deformed by ``gamma`` (in the even lattice) onto V.

    ``u -> (-1)^{<gamma, gamma_u>} e_gamma u``, where ``e_gamma e^d = eps(gamma, d) e^{gamma + d}``.
    """
    gamma = space.vec(gamma)
    out: dict = {}
    for key, c in vd.items():
        g = space.gamma(key)
        pairing = space.pair(gamma, g)
        if num(pairing).denominator != 1:
            raise ValueError("pi_bar is defined here on vectors with integral pairing against gamma")
        sign = ONE if int(pairing) % 2 == 0 else -ONE
        new = space.with_gamma(key, tuple(a + b for a, b in zip(gamma, g)))
        out[new] = out.get(new, ZERO) + c * sign * space.eps(gamma, g)
    return {k: c for k, c in out.items() if c}


def check_pi_bar(space: FockSpace, gamma, cutoff: int = 4, vectors: Iterable[int] | None = None) -> IdentityReport:
    """pi_bar(Y(Delta(gamma,z) a, z) u) = Y(a, z) pi_bar(u), exponents up to ``cutoff``."""
    gamma = space.vec(gamma)
    vecs = _default_vectors(space, vectors)
    tally = _Tally("pi_bar intertwines", cutoff, space)
    for a in vecs:
        da = space.delta(gamma, {a: ONE})
        for u in vecs:
            lhs: dict = {}
            for e1, x in da.items():
                for e2, y in space.Y_exponent_cap(x, {u: ONE}, cutoff - e1).items():
                    series_add(lhs, e1 + e2, pi_bar(space, gamma, y))
            rhs = space.Y_exponent_cap({a: ONE}, pi_bar(space, gamma, {u: ONE}), cutoff)
            tally.compare(lhs, rhs, {"a": space.key_str(a), "u": space.key_str(u)})
    return tally.report()


def a0_from_pi_bar(space: FockSpace, alpha, beta, vectors: Iterable[int] | None = None) -> Fraction:
    """The scalar A0(alpha, beta) with pi_bar(alpha+beta) = A0 pi_bar(alpha) pi_bar(beta).

    Evaluated on every vector in ``vectors``; raises if the ratio is not one scalar.
    """
    alpha, beta = space.vec(alpha), space.vec(beta)
    total = tuple(a + b for a, b in zip(alpha, beta))
    ratio = None
    for key in _default_vectors(space, vectors):
        left = pi_bar(space, total, {key: ONE})
        right = pi_bar(space, alpha, pi_bar(space, beta, {key: ONE}))
        (lk, lc), = left.items()
        (rk, rc), = right.items()
        if lk != rk:
            raise ValueError("pi_bar maps disagree on the basis")
        r = lc / rc
        if ratio is None:
            ratio = r
        elif r != ratio:
            raise ValueError("pi_bar composition is not a scalar multiple")
    return frac(ratio)


def lattice_a0_table(space: FockSpace, basis: Sequence) -> dict:
    """A0 on pairs of the given even-lattice vectors, computed from :func:`pi_bar`."""
    vecs = [space.vec(b) for b in basis]
    return {(i, j): a0_from_pi_bar(space, vecs[i], vecs[j]) for i in range(len(vecs)) for j in range(len(vecs))}
