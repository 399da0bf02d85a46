"""Independent cross-checks.

* ``ext_dual_route``: Ext through an injective resolution of the second argument.
* ``brute_small``: Ext through the unnormalised bar resolution (tiny inputs only).
* ``local_cohomology_cone``: Čech computation of local cohomology of the sl2
  nilpotent cone along the line ``h = f = 0``, bigraded by polynomial degree and
  weight.
* ``affine_regrading``: search for an affine change of gradings matching two
  tables of dimensions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import exactla as la
from .gmod import GradedModule
from .homcx import Complex, HomCache, cohomology, hom_complex
from .resolve import minimal_injective_resolution
from .sinf import ExtTable, ext


class OracleError(RuntimeError):
    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


# ---------------------------------------------------------------------------
# Ext, second route


@dataclass
class DualRouteResult:
    table: ExtTable
    projective: ExtTable
    agree: bool
    mismatches: list


def ext_dual_route(x: GradedModule, y: GradedModule, degrees: Sequence[int], shifts: Sequence[int]) -> DualRouteResult:
    top = max(degrees)
    inj = minimal_injective_resolution(y, top + 2)
    cx = inj.as_complex()
    src = Complex([x], [], complete=True)
    t = ExtTable(x.algebra.label, x.label, y.label, "ext-inj")
    cache = HomCache()
    for m in shifts:
        hc = hom_complex(src, cx, m, range(-1, top + 2), cache)
        for i in degrees:
            t.set(i, m, cohomology(hc.vs, i) if i >= 0 else 0)
    proj = ext(x, y, degrees, shifts)
    bad = t.compare(proj)
    return DualRouteResult(t, proj, not bad, bad)


# ---------------------------------------------------------------------------
# bar resolution


BAR_MAX_ALGEBRA = 8
BAR_MAX_DEGREE = 2
BAR_MAX_ENTRIES = 1 << 17


def _bar_weights(n: int, a_deg: np.ndarray, x_w: np.ndarray) -> np.ndarray:
    """Weight of ``a_1 (x) ... (x) a_n (x) x`` as an array of shape ``(dA,)*n + (dX,)``."""
    w = x_w.astype(np.int64)
    for _ in range(n):
        w = a_deg.reshape((-1,) + (1,) * w.ndim) + w[None, ...]
    return w


def _bar_differential(n: int, x: GradedModule, y: GradedModule, cols: np.ndarray) -> np.ndarray:
    """Apply ``delta: C^n -> C^{n+1}`` to a batch of cochains (rows of ``cols``)."""
    a = x.algebra
    p = a.p
    dA, dX, dY = a.dim, x.dim, y.dim
    rx = np.stack([x.act(k) for k in range(dA)])  # (a, x', x)
    ry = np.stack([y.act(k) for k in range(dA)])  # (a, y, y')
    b = cols.shape[0]
    f = cols.reshape((b,) + (dA,) * n + (dX, dY))
    # a_1 f(a_2, ..., x)
    out = np.einsum("ayz,b...z->ba...y", ry, f) % p
    # f(..., a_i a_{i+1}, ...)
    for i in range(n):
        g = np.tensordot(a.mult, f, axes=([2], [1 + i]))  # (ai, ai1, b, rest without axis i)
        g = np.moveaxis(g, 2, 0)  # (b, ai, ai1, rest)
        g = np.moveaxis(g, (1, 2), (1 + i, 2 + i))
        out = (out + (-1) ** (i + 1) * g) % p
    # f(a_1, ..., a_n, a_{n+1} x)
    h = np.einsum("b...uy,auv->b...avy", f, rx) % p
    out = (out + (-1) ** (n + 1) * h) % p
    return out.reshape(b, -1)


def _bar_masks(n: int, x: GradedModule, y: GradedModule, m: int) -> np.ndarray:
    w = _bar_weights(n, x.algebra.degrees, x.weights)
    mask = (w[..., None] + m) == y.weights.reshape((1,) * w.ndim + (-1,))
    return np.flatnonzero(mask.ravel())


def brute_small(x: GradedModule, y: GradedModule, degrees: Sequence[int] = (0, 1, 2), shifts: Optional[Sequence[int]] = None) -> ExtTable:
    """Ext through the bar resolution ``A^{(x)(n+1)} (x) X``."""
    a = x.algebra
    top = max(degrees)
    if a.dim > BAR_MAX_ALGEBRA or top > BAR_MAX_DEGREE:
        raise OracleError("size", f"bar resolution limited to dim A <= {BAR_MAX_ALGEBRA}, degree <= {BAR_MAX_DEGREE}")
    if a.dim ** (top + 1) * x.dim * y.dim > BAR_MAX_ENTRIES:
        raise OracleError("size", "cochain space too large")
    if shifts is None:
        span = int(np.abs(a.degrees).max()) * (top + 1)
        shifts = range(int(y.weights.min() - x.weights.max()) - span, int(y.weights.max() - x.weights.min()) + span + 1)
    p = a.p
    t = ExtTable(a.label, x.label, y.label, "bar")
    for m in shifts:
        masks = [_bar_masks(n, x, y, m) for n in range(top + 2)]
        ranks = []
        for n in range(top + 1):
            src, tgt = masks[n], masks[n + 1]
            if len(src) == 0 or len(tgt) == 0:
                ranks.append(0)
                continue
            size = a.dim ** n * x.dim * y.dim
            basis = np.zeros((len(src), size), dtype=np.int64)
            basis[np.arange(len(src)), src] = 1
            img = _bar_differential(n, x, y, basis)[:, tgt]
            ranks.append(la.rank(img.T, p))
        for i in degrees:
            if i < 0:
                t.set(i, m, 0)
                continue
            kern = len(masks[i]) - ranks[i]
            t.set(i, m, kern - (ranks[i - 1] if i > 0 else 0))
    return t


# ---------------------------------------------------------------------------
# graded rings and local cohomology


@dataclass
class GradedRing:
    """Commutative ``F_p[x_1..x_r]/(relations)``, bigraded by polynomial degree and weight."""

    p: int
    names: list
    weights: list
    relations: list  # each a dict exponent-tuple -> coefficient
    _cache: dict = field(default_factory=dict, repr=False)

    def monomials(self, d: int, w: int) -> list:
        key = ("mono", d, w)
        if key not in self._cache:
            out = []
            if d >= 0:
                for exps in _compositions(d, len(self.names)):
                    if sum(e * wt for e, wt in zip(exps, self.weights)) == w:
                        out.append(exps)
            self._cache[key] = out
        return self._cache[key]

    def _rel_bidegree(self, rel: dict) -> tuple:
        exps = next(iter(rel))
        return sum(exps), sum(e * wt for e, wt in zip(exps, self.weights))

    def piece(self, d: int, w: int):
        """``(monomials, proj, section)`` for the quotient ``R_{d,w} / I_{d,w}``."""
        key = ("piece", d, w)
        if key in self._cache:
            return self._cache[key]
        mons = self.monomials(d, w)
        if not mons:
            empty = np.zeros((0, 0), dtype=np.int64)
            self._cache[key] = (mons, empty, empty)
            return self._cache[key]
        pos = {e: k for k, e in enumerate(mons)}
        cols = []
        for rel in self.relations:
            rd, rw = self._rel_bidegree(rel)
            for mono in self.monomials(d - rd, w - rw):
                v = np.zeros(len(mons), dtype=np.int64)
                for exps, c in rel.items():
                    v[pos[tuple(a + b for a, b in zip(exps, mono))]] += c
                cols.append(v % self.p)
        sub = np.stack(cols, axis=1) if cols else np.zeros((len(mons), 0), dtype=np.int64)
        proj, sect = la.quotient_basis(len(mons), sub, self.p)
        self._cache[key] = (mons, proj, sect)
        return self._cache[key]

    def dim(self, d: int, w: int) -> int:
        return self.piece(d, w)[1].shape[0]

    def mult_map(self, mono: tuple, d: int, w: int) -> np.ndarray:
        """Multiplication by a monomial from the ``(d, w)`` piece to its target piece."""
        md = sum(mono)
        mw = sum(e * wt for e, wt in zip(mono, self.weights))
        src_m, _, src_s = self.piece(d, w)
        tgt_m, tgt_p, _ = self.piece(d + md, w + mw)
        pos = {e: k for k, e in enumerate(tgt_m)}
        lift = np.zeros((len(tgt_m), len(src_m)), dtype=np.int64)
        for k, e in enumerate(src_m):
            lift[pos[tuple(a + b for a, b in zip(e, mono))], k] = 1
        return la.matmul(tgt_p, la.matmul(lift, src_s, self.p), self.p)

    def bidegree(self, mono: tuple) -> tuple:
        return sum(mono), sum(e * wt for e, wt in zip(mono, self.weights))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def nilpotent_cone(p: int) -> GradedRing:
    """``F_p[e, h, f]/(h^2 + 4 e f)`` with weights 2, 0, -2."""
    if p < 3:
        raise OracleError("characteristic", "the quadric presentation needs p >= 3")
    la.check_prime(p)
    rel = {(0, 2, 0): 1, (1, 0, 1): 4 % p}
    return GradedRing(p, ["e", "h", "f"], [2, 0, -2], [rel])


def _gen(ring: GradedRing, name: str, power: int) -> tuple:
    e = [0] * len(ring.names)
    e[ring.names.index(name)] = power
    return tuple(e)


def _stable_power(ring: GradedRing, g: str, d: int, w: int, kmax: int) -> Optional[int]:
    """A ``K`` past ``|d| + |w|`` after which multiplication by ``g`` is bijective three times running."""
    gd, gw = ring.bidegree(_gen(ring, g, 1))
    run = 0
    # zero pieces below degree 0 look stable but are not
    for k in range(abs(d) + abs(w), abs(d) + abs(w) + kmax):
        a = ring.dim(d + k * gd, w + k * gw)
        b = ring.dim(d + (k + 1) * gd, w + (k + 1) * gw)
        mm = ring.mult_map(_gen(ring, g, 1), d + k * gd, w + k * gw)
        if a == b and la.rank(mm, ring.p) == a:
            run += 1
            if run == 3:
                return k - 2
        else:
            run = 0
    return None


@dataclass
class LocalCohomology:
    p: int
    cover: tuple
    bigraded: dict  # (i, d, w) -> dim
    inconclusive: list
    degrees: range
    window: range

    def by_weight(self, i: int) -> dict:
        out = {w: 0 for w in self.window}
        for (j, d, w), v in self.bigraded.items():
            if j == i:
                out[w] += v
        return out

    def table(self, i: int) -> dict:
        return {(d, w): v for (j, d, w), v in self.bigraded.items() if j == i and v}

    def edge_clear(self) -> bool:
        lo, hi = self.degrees.start, self.degrees.stop - 1
        return all(v == 0 for (j, d, w), v in self.bigraded.items() if d in (lo, hi))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "cover": list(self.cover),
            "weights": list(self.window),
            "H": {str(i): {str(w): v for w, v in self.by_weight(i).items()} for i in range(3)},
            "bigraded": [
                {"i": i, "d": d, "w": w, "dim": v} for (i, d, w), v in sorted(self.bigraded.items()) if v
            ],
            "inconclusive": [list(x) for x in self.inconclusive],
        }


def local_cohomology_cone(
    window: Sequence[int] = range(-6, 7),
    p: int = 3,
    degrees: Optional[Sequence[int]] = None,
    cover: Sequence[str] = ("h", "f"),
    kmax: int = 60,
) -> LocalCohomology:
    """``H^i`` of ``O -> O_g1 + O_g2 -> O_g1g2`` in every bidegree of the window.

    The localisation ``O_g`` in bidegree ``(d, w)`` is ``O_{(d,w) + K deg g}``
    for ``K`` past the point where multiplication by ``g`` has stabilised.
    """
    ring = nilpotent_cone(p)
    window = range(min(window), max(window) + 1)
    if degrees is None:
        reach = max(abs(min(window)), abs(max(window)))
        degrees = range(-reach - 2, reach + 4)
    degrees = range(min(degrees), max(degrees) + 1)
    g1, g2 = cover
    out = {}
    bad = []
    for w in window:
        for d in degrees:
            ks = [_stable_power(ring, g, d, w, kmax) for g in (g1, g2)]
            k12 = None
            if None not in ks:
                # the product localisation: stabilise multiplication by g1 g2
                k12 = _stable_product(ring, g1, g2, d, w, kmax)
            if None in ks or k12 is None:
                bad.append((d, w))
                continue
            k = max(ks + [k12])
            one = _gen(ring, g1, k)
            two = _gen(ring, g2, k)
            c0 = ring.dim(d, w)
            d1, w1 = _shifted(ring, one, d, w)
            d2, w2 = _shifted(ring, two, d, w)
            d12, w12 = _shifted(ring, tuple(a + b for a, b in zip(one, two)), d, w)
            n1, n2, n12 = ring.dim(d1, w1), ring.dim(d2, w2), ring.dim(d12, w12)
            m01 = ring.mult_map(one, d, w)
            m02 = ring.mult_map(two, d, w)
            m1 = ring.mult_map(two, d1, w1)
            m2 = ring.mult_map(one, d2, w2)
            dd0 = np.vstack([m01, m02]) if c0 else np.zeros((n1 + n2, 0), dtype=np.int64)
            dd1 = np.hstack([m1, (-m2) % p]) if n12 else np.zeros((0, n1 + n2), dtype=np.int64)
            r0 = la.rank(dd0, p) if dd0.size else 0
            r1 = la.rank(dd1, p) if dd1.size else 0
            out[(0, d, w)] = c0 - r0
            out[(1, d, w)] = (n1 + n2) - r1 - r0
            out[(2, d, w)] = n12 - r1
    return LocalCohomology(p, tuple(cover), out, bad, degrees, window)


def _shifted(ring: GradedRing, mono: tuple, d: int, w: int) -> tuple:
    md, mw = ring.bidegree(mono)
    return d + md, w + mw


def _stable_product(ring: GradedRing, g1: str, g2: str, d: int, w: int, kmax: int) -> Optional[int]:
    prod = tuple(a + b for a, b in zip(_gen(ring, g1, 1), _gen(ring, g2, 1)))
    pd, pw = ring.bidegree(prod)
    run = 0
    for k in range(abs(d) + abs(w), abs(d) + abs(w) + kmax):
        a = ring.dim(d + k * pd, w + k * pw)
        b = ring.dim(d + (k + 1) * pd, w + (k + 1) * pw)
        if a == b and la.rank(ring.mult_map(prod, d + k * pd, w + k * pw), ring.p) == a:
            run += 1
            if run == 3:
                return k - 2
        else:
            run = 0
    return None


# ---------------------------------------------------------------------------
# regrading search


@dataclass
class Regrading:
    matrix: tuple  # ((a, b), (c, d)) with Fraction entries
    offset: tuple
    matched: int
    checked: int

    def apply(self, i: int, m: int):
        """Image of ``(i, m)``, or ``None`` when it is not an integral point."""
        (a, b), (c, d) = self.matrix
        x = a * i + b * m + self.offset[0]
        y = c * i + d * m + self.offset[1]
        if x.denominator != 1 or y.denominator != 1:
            return None
        return int(x), int(y)

    def inverse(self) -> "Regrading":
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        inv = ((d / det, -b / det), (-c / det, a / det))
        o = (
            -(inv[0][0] * self.offset[0] + inv[0][1] * self.offset[1]),
            -(inv[1][0] * self.offset[0] + inv[1][1] * self.offset[1]),
        )
        return Regrading(inv, o, self.matched, self.checked)

    def describe(self) -> str:
        (a, b), (c, d) = self.matrix
        o1, o2 = self.offset
        return (
            f"(i, m) -> ({a}*i + {b}*m + {o1}, {c}*i + {d}*m + {o2}); "
            f"{self.matched} nonzero entries matched, {self.checked} entries checked"
        )


def _solve_affine(src: list, tgt: list) -> Optional[Regrading]:
    """The affine map over Q sending three source points to three target points."""
    (x0, y0), (x1, y1), (x2, y2) = [(Fraction(a), Fraction(b)) for a, b in src]
    u1, v1, u2, v2 = x1 - x0, y1 - y0, x2 - x0, y2 - y0
    det = u1 * v2 - u2 * v1
    if det == 0:
        return None
    (p0, q0), (p1, q1), (p2, q2) = [(Fraction(a), Fraction(b)) for a, b in tgt]
    rows = []
    for t0, t1, t2 in ((p0, p1, p2), (q0, q1, q2)):
        s1, s2 = t1 - t0, t2 - t0
        a = (s1 * v2 - s2 * v1) / det
        b = (u1 * s2 - u2 * s1) / det
        rows.append((a, b, t0 - a * x0 - b * y0))
    (a, b, o1), (c, d, o2) = rows
    if a * d - b * c == 0:
        return None
    return Regrading(((a, b), (c, d)), (o1, o2), 0, 0)


def _anchors(points: list) -> Optional[list]:
    pts = sorted(points, key=lambda k: (abs(k[1]) + abs(k[0]), k))
    for trio in itertools.combinations(pts[:8], 3):
        (x0, y0), (x1, y1), (x2, y2) = trio
        if (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0):
            return list(trio)
    return None


def affine_regrading(
    source: dict, target: dict, target_domain: set, min_matches: int = 3, anchor_pool: int = 14
) -> Optional[Regrading]:
    """Search an invertible affine map over Q identifying two dimension tables.

    ``source`` maps every certified ``(i, m)`` to its dimension (zeros
    included); ``target`` maps ``(d, w)`` to nonzero dimensions and
    ``target_domain`` lists the bidegrees actually computed.  Candidates send
    three anchor points of the source support onto three points of the target
    support.  A candidate is accepted when every nonzero source entry lands on
    an integral point carrying the same dimension (or outside the computed
    target domain), and every nonzero target entry whose preimage is an
    integral point of the source window is hit.
    """
    nonzero = [k for k, v in source.items() if v]
    anchors = _anchors(nonzero)
    if anchors is None:
        return None
    best = None
    tpoints = sorted(target, key=lambda k: (abs(k[0]) + abs(k[1]), k))[:anchor_pool]
    for trio in itertools.permutations(tpoints, 3):
        reg = _solve_affine(anchors, list(trio))
        if reg is None:
            continue
        ok, matched, checked = True, 0, 0
        for key, v in source.items():
            img = reg.apply(*key)
            if img is None:
                if v:
                    ok = False
                    break
                continue
            if img not in target_domain:
                continue
            checked += 1
            if target.get(img, 0) != v:
                ok = False
                break
            matched += bool(v)
        if not ok or matched < min_matches:
            continue
        inv = reg.inverse()
        if any((pre := inv.apply(*k)) is not None and pre in source and not source[pre] for k in target):
            continue
        reg.matched, reg.checked = matched, checked
        if best is None or (matched, checked) > (best.matched, best.checked):
            best = reg
    return best
