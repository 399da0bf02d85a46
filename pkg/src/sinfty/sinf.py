"""Ext, Tor, semi-infinite Ext, Hom through the A>=0-injective subcategory,
derived S and the checks that tie them together."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import exactla as la
from .galg import GradedAlgebra
from .gmod import (
    GradedModule,
    coregular,
    dual,
    dual_comparison,
    hom_space,
    hom_total,
    s_zero_data,
    tensor_over_A,
)
from .homcx import (
    Complex,
    HomCache,
    Inconclusive,
    VSComplex,
    cohomology,
    hom_complex,
    max_weight_bound,
    min_weight_bound,
    stupid_truncation,
)
from .resolve import (
    ProjectiveResolution,
    add_contractible,
    concave_resolution,
    convex_resolution,
    ext_dims,
    injectivity_test,
)


class CertificationError(RuntimeError):
    def __init__(self, message: str, binding: dict):
        super().__init__(message)
        self.binding = binding


@dataclass
class ExtTable:
    """``(i, m) -> dim`` with a certification flag per entry."""

    algebra: str = ""
    x: str = ""
    y: str = ""
    engine: str = ""
    entries: dict = field(default_factory=dict)  # (i, m) -> (dim, certified)
    notes: dict = field(default_factory=dict)

    def dim(self, i: int, m: int) -> int:
        return self.entries[(i, m)][0]

    def certified(self, i: int, m: int) -> bool:
        return self.entries.get((i, m), (0, False))[1]

    def set(self, i: int, m: int, dim: int, certified: bool = True) -> None:
        self.entries[(int(i), int(m))] = (int(dim), bool(certified))

    def keys(self):
        return sorted(self.entries)

    def nonzero(self) -> dict:
        return {k: v[0] for k, v in sorted(self.entries.items()) if v[0]}

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "X": self.x,
            "Y": self.y,
            "engine": self.engine,
            "entries": [
                {"i": i, "m": m, "dim": d, "certified": c}
                for (i, m), (d, c) in sorted(self.entries.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "m", "dim", "certified"])
        for (i, m), (d, c) in sorted(self.entries.items()):
            w.writerow([i, m, d, str(c).lower()])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> "ExtTable":
        t = cls(data.get("algebra", ""), data.get("X", ""), data.get("Y", ""), data.get("engine", ""))
        for e in data["entries"]:
            t.set(e["i"], e["m"], e["dim"], e.get("certified", True))
        return t

    @classmethod
    def from_json(cls, text: str) -> "ExtTable":
        return cls.from_dict(json.loads(text))

    def compare(self, other: "ExtTable") -> list:
        """Certified entries present in both tables whose dimensions differ."""
        bad = []
        for key in sorted(set(self.entries) & set(other.entries)):
            (d1, c1), (d2, c2) = self.entries[key], other.entries[key]
            if c1 and c2 and d1 != d2:
                bad.append((key, d1, d2))
        return bad

    def agrees_with(self, other: "ExtTable") -> bool:
        return not self.compare(other)


def _label(obj) -> str:
    return getattr(obj, "label", "") or type(obj).__name__


# ---------------------------------------------------------------------------
# ordinary Ext and Tor


def ext(x: GradedModule, y: GradedModule, degrees: Sequence[int], shifts: Sequence[int]) -> ExtTable:
    """``Ext^i_A(X, Y)_m`` via the minimal projective resolution of ``X``."""
    t = ExtTable(x.algebra.label, _label(x), _label(y), "ext")
    if x.dim == 0 or y.dim == 0:
        for i in degrees:
            for m in shifts:
                t.set(i, m, 0)
        return t
    dims = ext_dims(x, y, [i for i in degrees if i >= 0] or [0], shifts)
    for i in degrees:
        for m in shifts:
            t.set(i, m, dims.get((i, m), 0) if i >= 0 else 0)
    return t


def tor(mr: GradedModule, nl: GradedModule, degrees: Sequence[int], weights: Sequence[int]) -> ExtTable:
    """``Tor_i^A(M, N)`` in total weight ``t`` via the projective resolution of the right module."""
    tab = ExtTable(nl.algebra.label, _label(mr), _label(nl), "tor")
    top = max(max(degrees), 0)
    if mr.dim == 0 or nl.dim == 0:
        for i in degrees:
            for w in weights:
                tab.set(i, w, 0)
        return tab
    pr = ProjectiveResolution(mr, top + 2)
    for w in weights:
        vs = pr.tensor_chain(nl, w, top)
        for i in degrees:
            tab.set(i, w, cohomology(vs, -i) if i >= 0 else 0)
    return tab


def s_derived(n: GradedModule, degrees: Sequence[int], shifts: Optional[Sequence[int]] = None) -> ExtTable:
    """``R^i S(N) = Ext^i_A(A*, N)`` per shift."""
    astar, _ = coregular(n.algebra)
    if shifts is None:
        lo = int(n.weights.min() - astar.weights.max()) if n.dim else 0
        hi = int(n.weights.max() - astar.weights.min()) if n.dim else 0
        shifts = range(lo - 2 * max(degrees, default=0), hi + 2 * max(degrees, default=0) + 1)
    t = ext(astar, n, degrees, shifts)
    t.engine = "s"
    return t


def s_derived_injective(n: GradedModule, degrees: Sequence[int], shifts: Sequence[int]) -> ExtTable:
    """``Ext^i_A(A*, N)`` through a minimal injective resolution of ``N``."""
    from .resolve import minimal_injective_resolution

    astar, _ = coregular(n.algebra)
    top = max(degrees)
    inj = minimal_injective_resolution(n, top + 2)
    cx = inj.as_complex()
    src = Complex([astar], [], complete=True)
    t = ExtTable(n.algebra.label, "A*", _label(n), "s-inj")
    cache = HomCache()
    for m in shifts:
        hc = hom_complex(src, cx, m, range(-1, top + 2), cache)
        for i in degrees:
            t.set(i, m, cohomology(hc.vs, i) if i >= 0 else 0)
    return t


# ---------------------------------------------------------------------------
# semi-infinite Ext


@dataclass
class ResolutionPair:
    convex: Complex
    concave: Complex
    label: str


def resolution_pair(x: GradedModule, y: GradedModule, variant: str = "reduced", depth: int = 1) -> ResolutionPair:
    """Convex resolution of ``X`` and concave resolution of ``Y``.

    ``variant``: ``"reduced"`` (default rule), ``"naive"`` (unit of the
    adjunction), ``"padded"`` (naive rule plus a contractible summand on
    both sides) or ``"reduced-padded"``.
    """
    reduced = variant in ("reduced", "reduced-padded")
    j, _ = convex_resolution(x, depth, reduced=reduced)
    i, _ = concave_resolution(y, depth, reduced=reduced)
    if variant in ("padded", "reduced-padded"):
        j.extend_to(3)
        i.extend_to(3)
        if len(j.terms) >= 2:
            j = add_contractible(j, 0, j.terms[1])
        if len(i.terms) >= 2:
            i = add_contractible(i, 0, i.terms[1])
    return ResolutionPair(j, i, variant)


def _required_depths(pair: ResolutionPair, x: GradedModule, y: GradedModule, degrees, m: int):
    """Smallest prefixes of J and I such that every omitted pair vanishes by weights.

    Term ``k`` of J has weights ``<= max X - k`` and term ``j`` of I weights
    ``>= min Y + j``; a pair ``(k, k + n)`` can contribute to shift ``m``
    only when ``max X - k + m >= min Y + k + n``.
    """
    if x.dim == 0 or y.dim == 0:
        return 0, 0
    top, bot = int(x.weights.max()), int(y.weights.min())
    need_j = need_i = 0
    for n in degrees:
        kmax = (top - bot + m - n) // 2
        if kmax < 0 or kmax + n < 0:
            continue
        need_j = max(need_j, kmax + 1)
        need_i = max(need_i, kmax + n + 1)
    return need_j, need_i


def semi_infinite_ext(
    x: GradedModule,
    y: GradedModule,
    degrees: Sequence[int],
    shifts: Sequence[int],
    variant: str = "reduced",
    depth_cap: int = 24,
    pair: Optional[ResolutionPair] = None,
    strict: bool = False,
) -> ExtTable:
    """``H^i(Hom(J_X, I_Y))_m`` with weight-separation and plateau certificates."""
    t = ExtTable(x.algebra.label, _label(x), _label(y), "sinf")
    if x.dim == 0 or y.dim == 0:
        for i in degrees:
            for m in shifts:
                t.set(i, m, 0)
        return t
    pair = pair or resolution_pair(x, y, variant)
    j, inj = pair.convex, pair.concave
    cache = HomCache()
    all_degs = sorted({n for i in degrees for n in (i - 1, i, i + 1)})
    for m in shifts:
        dj, di = _required_depths(pair, x, y, all_degs, m)
        # padding shifts term positions by nothing, but add one for the plateau check
        dj, di = dj + 1, di + 1
        if max(dj, di) > depth_cap:
            if strict:
                raise CertificationError(
                    "increase depth cap", {"m": m, "needed_convex": dj, "needed_concave": di, "cap": depth_cap}
                )
            for i in degrees:
                t.notes[(i, m)] = f"needs depth {max(dj, di)} > cap {depth_cap}"
            continue
        j.extend_to(dj)
        inj.extend_to(di)
        _check_weight_bounds(j, inj, x, y)
        lo = _truncated(j, dj - 1), _truncated(inj, di - 1)
        hi = _truncated(j, dj), _truncated(inj, di)
        hc_lo = hom_complex(lo[0], lo[1], m, all_degs, cache)
        hc_hi = hom_complex(hi[0], hi[1], m, all_degs, cache)
        for i in degrees:
            a = cohomology(hc_lo.vs, i)
            b = cohomology(hc_hi.vs, i)
            t.set(i, m, b, certified=(a == b))
            if a != b:
                t.notes[(i, m)] = f"no plateau: {a} vs {b}"
    return t


def _truncated(c: Complex, n: int) -> Complex:
    n = min(n, len(c.terms))
    return Complex(c.terms[:n], c.diffs[: max(0, n - 1)], start=c.start, complete=True, algebra=c.algebra)


def _check_weight_bounds(j: Complex, i: Complex, x: GradedModule, y: GradedModule) -> None:
    top, bot = int(x.weights.max()), int(y.weights.min())
    for k, term in enumerate(j.terms):
        if term.dim and term.weights.max() > top - k:
            raise CertificationError("convex resolution violates its weight bound", {"term": k})
    for k, term in enumerate(i.terms):
        if term.dim and term.weights.min() < bot + k:
            raise CertificationError("concave resolution violates its weight bound", {"term": k})


# ---------------------------------------------------------------------------
# Hom through the subcategory generated by A>=0-injectives


@dataclass
class HomThroughResult:
    dim: int
    n_used: int
    n_cert: int
    plateau: bool

    @property
    def certified(self) -> bool:
        return self.plateau


class HomThrough:
    """``Hom_D(sigma_{<n} J_X, Y[i])_m`` computed as ``H^i`` of
    ``(+)_k Hom_{A^op}(P_{k+i}, (J^k)*)_m`` for a projective resolution ``P``
    of ``Y*`` over the opposite algebra (i.e. with the injective resolution
    of ``Y`` it dualises to)."""

    def __init__(self, x: GradedModule, y: GradedModule, reduced: bool = True):
        self.x, self.y = x, y
        self.a = x.algebra
        self.j, _ = convex_resolution(x, 1, reduced=reduced)
        self.pres = ProjectiveResolution(dual(y), 1)
        self._duals: dict = {}

    def _dual_term(self, k: int) -> GradedModule:
        if k not in self._duals:
            self._duals[k] = dual(self.j.terms[k])
        return self._duals[k]

    def n_cert(self, i: int, m: int) -> int:
        """Truncation length after which the directed system is constant.

        The kernel of ``sigma_{<n+1} -> sigma_{<n}`` is ``J^n[-n]``; its Homs into
        ``Y[i]`` and ``Y[i+1]`` are computed by a concave resolution of ``Y``
        whose term ``s`` has weights ``>= min Y + s``, against weights
        ``<= max X - n`` of ``J^n``: they vanish once ``2n > max X - min Y + m - i + 1``.
        """
        top, bot = int(self.x.weights.max()), int(self.y.weights.min())
        return max(1, (top - bot + m - i + 1) // 2 + 1)

    def value(self, i: int, m: int, n: int) -> int:
        p = self.a.p
        self.j.extend_to(n)
        n = min(n, len(self.j.terms))
        if n == 0:
            return 0
        self.pres.extend(n + i + 3)
        degs = (i - 1, i, i + 1)
        bases = {}  # (k, jj) -> basis
        for deg in degs:
            for k in range(n):
                jj = k + deg
                if jj < 0 or jj >= len(self.pres.terms):
                    continue
                if (k, jj) not in bases:
                    bases[(k, jj)] = self.pres.hom_basis(self._dual_term(k), m, jj)
        dims = {}
        offs = {}
        for deg in degs:
            o = 0
            for k in range(n):
                jj = k + deg
                if (k, jj) in bases:
                    offs[(k, jj)] = o
                    o += ProjectiveResolution.basis_dim(bases[(k, jj)])
            dims[deg] = o
        diffs = {}
        for deg in (i - 1, i):
            mat = np.zeros((dims[deg + 1], dims[deg]), dtype=np.int64)
            for k in range(n):
                jj = k + deg
                if (k, jj) not in bases:
                    continue
                src = bases[(k, jj)]
                so = offs[(k, jj)]
                sd = ProjectiveResolution.basis_dim(src)
                if sd == 0:
                    continue
                # vertical: precompose with d_P : P_{jj+1} -> P_jj
                if (k, jj + 1) in bases:
                    tgt = bases[(k, jj + 1)]
                    v = self.pres.vertical(self._dual_term(k), src, tgt, jj)
                    to = offs[(k, jj + 1)]
                    mat[to : to + v.shape[0], so : so + sd] += v
                # horizontal: postcompose with (d_J^{k-1})^T : (J^k)* -> (J^{k-1})*
                if k >= 1 and (k - 1, jj) in bases:
                    tgt = bases[(k - 1, jj)]
                    g = self.j.diffs[k - 1].T
                    h = ProjectiveResolution.post(g, src, tgt, p)
                    to = offs[(k - 1, jj)]
                    sign = -1 if jj % 2 else 1
                    mat[to : to + h.shape[0], so : so + sd] += sign * h
            diffs[deg] = np.mod(mat, p)
        vs = VSComplex(p, dims, diffs)
        vs.check()
        return cohomology(vs, i)

    def compute(self, i: int, m: int, cap: int = 40) -> HomThroughResult:
        n0 = self.n_cert(i, m)
        if n0 + 1 > cap:
            raise CertificationError("truncation cap reached", {"i": i, "m": m, "needed": n0 + 1, "cap": cap})
        a = self.value(i, m, n0)
        b = self.value(i, m, n0 + 1)
        return HomThroughResult(b, n0 + 1, n0, a == b)


def hom_through(x: GradedModule, y: GradedModule, i: int, m: int, cap: int = 40) -> HomThroughResult:
    if x.dim == 0 or y.dim == 0:
        return HomThroughResult(0, 0, 0, True)
    return HomThrough(x, y).compute(i, m, cap)


def hom_through_table(x: GradedModule, y: GradedModule, degrees, shifts, cap: int = 40) -> ExtTable:
    t = ExtTable(x.algebra.label, _label(x), _label(y), "hom-through")
    if x.dim == 0 or y.dim == 0:
        for i in degrees:
            for m in shifts:
                t.set(i, m, 0)
        return t
    engine = HomThrough(x, y)
    for i in degrees:
        for m in shifts:
            try:
                r = engine.compute(i, m, cap)
            except CertificationError as exc:
                t.notes[(i, m)] = str(exc)
                continue
            t.set(i, m, r.dim, r.certified)
    return t


# ---------------------------------------------------------------------------
# the duality checks


@dataclass
class IsomomReport:
    ext_vanishing: dict
    s_vanishing: dict
    tor_vanishing: dict
    pairing_rank: int
    tensor_dim: int
    hom_dim: int
    equivariant: bool

    @property
    def vanishing_ok(self) -> bool:
        return all(v == 0 for d in (self.ext_vanishing, self.s_vanishing, self.tor_vanishing) for v in d.values())

    @property
    def iso_ok(self) -> bool:
        return self.equivariant and self.pairing_rank == self.tensor_dim == self.hom_dim

    @property
    def ok(self) -> bool:
        return self.vanishing_ok and self.iso_ok


class PreconditionError(ValueError):
    pass


def pairing_map(m: GradedModule, n: GradedModule):
    """``M^ (x)_A S(N) -> Hom_A(M, N)``, ``phi (x) psi -> psi o phi``.

    ``M^`` is the linear dual with ``f -> (v -> (x -> f(x v)))`` identifying it
    with ``Hom_A(M, A*)``.  Returns (quotient space, matrix on the quotient,
    flattened image maps, S(N)).
    """
    a, p = m.algebra, m.p
    md = dual(m)
    s, smaps = s_zero_data(n)
    acts = np.stack([m.act(k) for k in range(a.dim)], axis=0)  # (k, i, j)
    # Phi_i[k, j] = (a_k v_j)_i
    phis = np.transpose(acts, (1, 0, 2))  # (i, k, j)
    # image of f_i (x) psi_b = psi_b @ Phi_i  (dim N x dim M)
    imgs = np.einsum("bnk,ikj->ibnj", smaps, phis) % p  # (i, b, N, M)
    big = imgs.reshape(md.dim * s.dim, n.dim * m.dim).T  # columns indexed (i, b)
    space = tensor_over_A(md, s)
    return space, big, imgs, s


def check_isomom(m: GradedModule, n: GradedModule, degrees: Sequence[int] = (1, 2, 3)) -> IsomomReport:
    a, p = m.algebra, m.p
    if not injectivity_test(m, a.sub("ge")):
        raise PreconditionError("M is not A>=0-projective")
    if not injectivity_test(n, a.sub("le")):
        raise PreconditionError("N is not A<=0-injective")
    shifts = range(
        int(n.weights.min() - m.weights.max()) - 2 * max(degrees) * a.degrees.max() - 2,
        int(n.weights.max() - m.weights.min()) + 2 * max(degrees) * a.degrees.max() + 3,
    )
    e = ext(m, n, list(degrees), shifts)
    sd = s_derived(n, list(degrees))
    space, big, imgs, s = pairing_map(m, n)
    md = dual(m)
    tw = sorted(set(int(w) for w in (md.weights[:, None] + s.weights[None, :]).ravel()))
    tr = tor(md, s, list(degrees), range(min(tw) - 2 * max(degrees) - 2, max(tw) + 2 * max(degrees) + 3))
    # the pairing must kill the balancing relations and land in A-linear maps
    rels = []
    for g in a.generators:
        r = np.kron(md.action[g], la.identity(s.dim)) - np.kron(la.identity(md.dim), s.action[g])
        rels.append(np.mod(r, p))
    rel = np.hstack(rels)
    kills = not np.any(la.matmul(big, rel, p))
    equiv = kills
    for g in a.generators:
        lhs = np.einsum("nj,ibjl->ibnl", n.action[g], imgs) % p
        rhs = np.einsum("ibnj,jl->ibnl", imgs, m.action[g]) % p
        if not np.array_equal(lhs, rhs):
            equiv = False
    rank = la.rank(big, p)
    hom_dim = sum(h.dim for h in hom_total(m, n).values())
    return IsomomReport(
        {k: v for k, v in e.nonzero().items()},
        {k: v for k, v in sd.nonzero().items()},
        {k: v for k, v in tr.nonzero().items() if k[0] != 0},
        rank,
        space.dim,
        hom_dim,
        equiv,
    )


def find_isomorphism(m: GradedModule, n: GradedModule, seed: int = 0, tries: int = 64) -> Optional[np.ndarray]:
    """An invertible degree-0 module map ``M -> N`` from random combinations of a Hom basis."""
    if m.dim != n.dim or not np.array_equal(np.sort(m.weights), np.sort(n.weights)):
        return None
    h = hom_space(m, n, 0)
    if h.dim == 0:
        return None
    rng = np.random.default_rng(seed)
    p = m.p
    for _ in range(tries):
        c = rng.integers(0, p, h.dim)
        f = np.mod(np.tensordot(c, h.maps, axes=(0, 0)), p)
        if la.rank(f, p) == m.dim:
            return f
    return None


def symmetrizing_form(a: GradedAlgebra) -> Optional[np.ndarray]:
    """A degree-0 functional ``lam`` with ``lam(xy) = lam(yx)`` and nondegenerate form, if one exists."""
    p = a.p
    # lam(x y - y x) = 0 for generators x and all basis y
    rows = []
    for g in a.generators:
        comm = (a.mult[g] - a.mult[:, g, :]) % p  # (y, k)
        rows.append(comm)
    eqs = np.vstack(rows)
    # lam supported in degree 0
    off = [k for k in range(a.dim) if a.degrees[k] != 0]
    extra = la.identity(a.dim)[off]
    ker, _ = la.nullspace(np.vstack([eqs, extra]) % p, p)
    if ker.shape[1] == 0:
        return None
    rng = np.random.default_rng(0)
    for _ in range(32):
        lam = la.matmul(ker, rng.integers(0, p, (ker.shape[1], 1)), p)[:, 0]
        gram = la.tensordot(a.mult, lam, ([2], [0]), p)
        if la.rank(gram, p) == a.dim:
            return lam
    return None


def s_identity_iso(n: GradedModule, lam: Optional[np.ndarray] = None):
    """``S(N) -> N``, ``psi -> psi(lam)`` for a symmetrizing form; verified bijective and A-linear."""
    a, p = n.algebra, n.p
    lam = symmetrizing_form(a) if lam is None else lam
    if lam is None:
        return None
    s, smaps = s_zero_data(n)
    phi = np.mod(np.einsum("bnk,k->nb", smaps, lam), p)
    if phi.shape[0] != phi.shape[1] or la.rank(phi, p) != n.dim:
        return None
    for g in a.generators:
        if not np.array_equal(la.matmul(phi, s.action[g], p), la.matmul(n.action[g], phi, p)):
            return None
    return s, phi
