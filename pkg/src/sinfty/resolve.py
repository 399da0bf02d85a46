"""Resolutions: coinduction coresolutions, minimal projective/injective
resolutions, injectivity tests and the coinduced filtration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import exactla as la
from . import galg
from .galg import GradedAlgebra
from .gmod import (
    GradedModule,
    ModuleError,
    coinduce_data,
    direct_sum,
    dual,
    homogeneous_span,
    kernel_of,
    quotient,
    restrict,
    submodule,
    submodule_closure,
    zero_module,
)
from .homcx import Complex, Inconclusive


class ResolutionError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


# ---------------------------------------------------------------------------
# socles and radicals of modules


def radical_generators(b: GradedAlgebra, side: str) -> np.ndarray:
    """Homogeneous elements generating ``rad(B)`` as a left (``side="left"``) or right ideal."""
    key = "_rad_gens_" + side
    if key in b.__dict__:
        return b.__dict__[key]
    p = b.p
    rad = galg.radical(b)
    mult = b.left_mult if side == "left" else b.right_mult
    span = la.EchelonBasis(b.dim, p)
    gens = []
    # degree-homogeneous radical basis (the reduced basis may mix degrees)
    cols = []
    for d in b.degree_set:
        idx = b.degree_indices(d)
        blk = np.zeros_like(rad)
        blk[idx] = rad[idx]
        cols.append(blk)
    homog = la.column_basis(np.hstack(cols), p)[0] if cols and rad.shape[1] else rad
    for c in range(homog.shape[1]):
        r = homog[:, c]
        if span.contains(r):
            continue
        gens.append(r)
        # ideal generated: span of a_k r (left) or r a_k (right)
        if side == "left":
            ideal = la.matmul(b.right_matrix(r), la.identity(b.dim), p)
        else:
            ideal = la.matmul(b.left_matrix(r), la.identity(b.dim), p)
        for j in range(ideal.shape[1]):
            span.add(ideal[:, j])
        if span.dim == rad.shape[1]:
            break
    out = np.stack(gens, axis=1) if gens else np.zeros((b.dim, 0), dtype=np.int64)
    b.__dict__[key] = out
    return out


def radical_actions(m: GradedModule, side: str = "left") -> list[np.ndarray]:
    gens = radical_generators(m.algebra, side)
    return [m.act_element(gens[:, c]) for c in range(gens.shape[1])]


def socle(m: GradedModule) -> np.ndarray:
    """Homogeneous basis of ``soc(M) = {v : rad(A) v = 0}``."""
    if m.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    acts = radical_actions(m, "left")
    if not acts:
        return la.identity(m.dim)
    stacked = np.vstack(acts)
    cols = []
    for w in m.weight_set:
        idx = m.at(w)
        ker, _ = la.nullspace(stacked[:, idx], m.p)
        full = np.zeros((m.dim, ker.shape[1]), dtype=np.int64)
        full[idx] = ker
        cols.append(full)
    return np.hstack(cols)


def radical_of_module(m: GradedModule) -> np.ndarray:
    """Homogeneous basis of ``rad(A) M``."""
    acts = radical_actions(m, "right")
    if not acts or m.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    vecs = np.hstack(acts)
    from .gmod import split_homogeneous

    return homogeneous_span(m, split_homogeneous(m, vecs))


# ---------------------------------------------------------------------------
# coinduction coresolution steps


@dataclass
class CoresStep:
    term: GradedModule  # I
    embed: np.ndarray  # M -> I
    coker: GradedModule
    coker_proj: np.ndarray  # I -> coker
    kept: GradedModule  # the B-module that was coinduced


def _side_algebra(a: GradedAlgebra, side: str) -> GradedAlgebra:
    return a.sub(side)


def _discard_submodule(m: GradedModule, b: GradedAlgebra, side: str) -> np.ndarray:
    """A maximal graded ``B``-submodule ``K`` with ``K`` meeting ``soc_A(M) + M_edge`` trivially.

    ``M -> CoInd_B^A(M / K)`` is injective iff ``K`` contains no nonzero
    ``A``-submodule, i.e. misses ``soc_A(M)``; missing the edge weight keeps
    the map an isomorphism there.  ``K`` is grown by complements inside the
    ``B``-socle of ``M / K`` until that socle lies in the image of the
    protected subspace; complements are taken per isotypic component of
    ``A^0`` (split case: multiplicity spaces cut out by primitive idempotents).
    """
    a, p = m.algebra, m.p
    a0 = a.sub("a0")
    edge_w = m.weight_range[1] if side == "le" else m.weight_range[0]
    edge = la.identity(m.dim)[:, m.at(edge_w)]
    soc = socle(m)
    protect = np.hstack([soc, edge]) if soc.shape[1] else edge
    idems = []
    for e in galg.idempotent_classes(a0):
        full = np.zeros(a.dim, dtype=np.int64)
        full[list(a0.embedding)] = e
        idems.append(m.act_element(full))
    a0_mats = [m.act(i) for i in a0.embedding]
    rgens = radical_generators(b, "left")
    rad_mats = []
    for c in range(rgens.shape[1]):
        full = np.zeros(a.dim, dtype=np.int64)
        full[list(b.embedding)] = rgens[:, c]
        rad_mats.append(m.act_element(full))
    resm = restrict(m, b)
    k = np.zeros((m.dim, 0), dtype=np.int64)
    while True:
        if k.shape[1]:
            q, proj, sect = quotient(resm, k)
            qw = q.weights
        else:
            proj = sect = la.identity(m.dim)
            qw = m.weights
        qmat = lambda mat: la.matmul(la.matmul(proj, mat, p), sect, p)
        rq = [qmat(r) for r in rad_mats]
        eq = [qmat(e) for e in idems]
        zq = [qmat(z) for z in a0_mats]
        tbar = la.matmul(proj, protect, p)
        new = []
        for w in sorted(set(int(x) for x in qw)):
            idx = np.flatnonzero(qw == w)
            if rq:
                ker, _ = la.nullspace(np.vstack([r[:, idx] for r in rq]), p)
            else:
                ker = la.identity(len(idx))
            if ker.shape[1] == 0:
                continue
            x = np.zeros((len(qw), ker.shape[1]), dtype=np.int64)
            x[idx] = ker
            tw = tbar[:, np.any(tbar[idx] != 0, axis=0)] if tbar.shape[1] else tbar
            ux = la.intersect(x, tw, p) if tw.shape[1] else np.zeros((len(qw), 0), dtype=np.int64)
            for e in eq:
                ex = la.matmul(e, x, p)
                eb = la.EchelonBasis(len(qw), p)
                for v in la.matmul(e, ux, p).T if ux.shape[1] else []:
                    eb.add(v)
                comp = [v for v in ex.T if eb.add(v)]
                for v in comp:
                    new.extend(la.matmul(z, v[:, None], p)[:, 0] for z in zq)
        if not new:
            return k
        c = la.column_basis(np.stack(new, axis=1), p)[0]
        k = np.hstack([k, la.matmul(sect, c, p)])


def coresolution_step(m: GradedModule, side: str, reduced: bool = True) -> CoresStep:
    """``M -> CoInd_B^A(L)`` with ``B = A^{side}``.

    Naive: ``L = Res_B M`` (the unit of the adjunction).  Reduced:
    ``L = Res_B M / K`` for the greedy ``K`` of :func:`_discard_submodule`;
    the map ``v -> (x -> [x v])`` stays injective and an isomorphism on the
    edge weight.
    """
    a = m.algebra
    p = a.p
    if m.dim == 0:
        z = zero_module(a)
        e = np.zeros((0, 0), dtype=np.int64)
        return CoresStep(z, e, z, e, zero_module(a.sub(side)))
    b = _side_algebra(a, side)
    resm = restrict(m, b)
    if reduced:
        k = _discard_submodule(m, b, side)
        kept, proj, _ = quotient(resm, k)
    else:
        kept, proj = resm, la.identity(m.dim)
    term, maps = coinduce_data(b, kept)
    cd = term.coind
    embed = np.zeros((term.dim, m.dim), dtype=np.int64)
    for w in m.weight_set:
        if w not in cd.offsets:
            continue
        idx = m.at(w)
        o, h = cd.offsets[w]
        rows, cols = h._free_entries
        # coordinate (r, x) of v -> (a -> proj(a v)) is row r of proj rho(a_x) v
        vals = {int(x): la.matmul(proj, m.act(int(x))[:, idx], p) for x in np.unique(cols)}
        for j, (r, x) in enumerate(zip(rows, cols)):
            embed[o + j, idx] = vals[int(x)][r]
    if la.rank(embed, p) != m.dim:
        raise ResolutionError("embedding", "coresolution map is not injective")
    coker, cproj, _ = quotient(term, embed)
    return CoresStep(term, embed, coker, cproj, kept)


def coresolution_step_ge(m: GradedModule) -> CoresStep:
    """``M -> CoInd_{A>=0}^A Res_{A>=0} M`` (the unit of the adjunction)."""
    return coresolution_step(m, "ge", reduced=False)


def coresolution(
    m: GradedModule, side: str, depth: int, reduced: bool = True
) -> tuple[Complex, np.ndarray]:
    """Coresolution by coinduced modules; returns the complex and the augmentation."""
    a = m.algebra
    first = coresolution_step(m, side, reduced)
    state = {"last": first}

    def extender(c: Complex):
        prev = state["last"]
        step = coresolution_step(prev.coker, side, reduced)
        diff = la.matmul(step.embed, prev.coker_proj, a.p)
        state["last"] = step
        if step.coker.dim == 0:
            c.complete = True
        return step.term, diff

    cx = Complex(
        [first.term],
        [],
        complete=first.coker.dim == 0,
        extender=extender,
        direction="down" if side == "le" else "up",
        algebra=a,
    )
    cx.side = side
    cx.reduced = reduced
    cx.extend_to(depth)
    return cx, first.embed


def convex_resolution(x: GradedModule, depth: int, reduced: bool = True):
    """Terms coinduced from ``A<=0`` (hence ``A>=0``-injective); weights go down."""
    return coresolution(_as_module(x), "le", depth, reduced)


def concave_resolution(y: GradedModule, depth: int, reduced: bool = True):
    """Terms coinduced from ``A>=0`` (hence ``A<=0``-injective); weights go up."""
    return coresolution(_as_module(y), "ge", depth, reduced)


def _as_module(x) -> GradedModule:
    if isinstance(x, GradedModule):
        return x
    if isinstance(x, Complex) and len(x.terms) == 1 and x.complete and x.start == 0:
        return x.terms[0]
    raise ResolutionError("input", "resolutions accept modules (complexes concentrated in degree 0)")


def add_contractible(c: Complex, k: int, extra: GradedModule) -> Complex:
    """``c`` plus the contractible complex ``extra --id--> extra`` in positions ``k, k+1``."""
    c.extend_to(k + 2)
    p = c.p
    terms = list(c.terms)
    diffs = list(c.diffs)
    n = extra.dim
    terms[k] = direct_sum([c.terms[k], extra])
    terms[k + 1] = direct_sum([c.terms[k + 1], extra])
    dk = diffs[k]
    new = np.zeros((terms[k + 1].dim, terms[k].dim), dtype=np.int64)
    new[: dk.shape[0], : dk.shape[1]] = dk
    new[dk.shape[0] :, dk.shape[1] :] = la.identity(n)
    diffs[k] = new
    if k >= 1:
        d = diffs[k - 1]
        diffs[k - 1] = np.vstack([d, np.zeros((n, d.shape[1]), dtype=np.int64)])
    if k + 1 < len(diffs):
        d = diffs[k + 1]
        diffs[k + 1] = np.hstack([d, np.zeros((d.shape[0], n), dtype=np.int64)])
    out = Complex(terms, diffs[: len(terms) - 1], start=c.start, complete=c.complete, direction=c.direction, algebra=c.algebra)
    # continuation: the original rule, with the extra summand ignored beyond k+1
    inner = c

    def extender(cx: Complex):
        idx = len(cx.terms)
        inner.extend_to(idx + 1)
        term = inner.terms[idx]
        d = inner.diffs[idx - 1]
        if idx - 1 == k + 1:
            d = np.hstack([d, np.zeros((d.shape[0], n), dtype=np.int64)])
        if inner.complete and len(inner.terms) == idx + 1:
            cx.complete = True
        return term, d

    out.extender = extender
    out.complete = c.complete and len(c.terms) == len(terms)
    return out


def augmented_exact(m: GradedModule, c: Complex, aug: np.ndarray, depth: int) -> bool:
    from .homcx import augmentation_is_qiso

    return augmentation_is_qiso(m, c, aug, depth)


# ---------------------------------------------------------------------------
# projective modules and minimal projective resolutions


@dataclass
class IndecProjective:
    idem: np.ndarray  # primitive idempotent e (coordinates in B)
    basis: np.ndarray  # homogeneous basis of B e (columns in B)
    module: GradedModule  # B e with weights = degrees
    gen: np.ndarray  # coordinates of e in the basis


def indecomposable_projectives(b: GradedAlgebra) -> list[IndecProjective]:
    cached = b.__dict__.get("_indec_proj")
    if cached is not None:
        return cached
    p = b.p
    out = []
    for e in galg.idempotent_classes(b):
        re = b.right_matrix(e)
        cols = []
        for d in b.degree_set:
            idx = b.degree_indices(d)
            basis, _ = la.column_basis(re[:, idx], p)
            cols.append(basis)
        basis = np.hstack(cols)
        weights = [int(b.degrees[int(np.flatnonzero(basis[:, j])[0])]) for j in range(basis.shape[1])]
        action = {}
        for g in b.generators:
            action[g] = la.solve(basis, la.matmul(b.left_mult[g], basis, p), p)
        mod = GradedModule(b, weights, action, label="Be")
        gen = la.solve(basis, e, p)
        out.append(IndecProjective(e, basis, mod, gen))
    b.__dict__["_indec_proj"] = out
    return out


@dataclass
class ProjTerm:
    """``P = (+)_i B e_{c_i}`` with generator of summand ``i`` in weight ``w_i``."""

    summands: list  # (class index, weight)
    module: GradedModule
    offsets: list  # start of each summand in module coordinates

    def component(self, v: np.ndarray, i: int, projs: list[IndecProjective]) -> np.ndarray:
        """Element of ``B`` carried by summand ``i`` of ``v``."""
        c, _ = self.summands[i]
        ip = projs[c]
        o = self.offsets[i]
        return ip.basis @ v[o : o + ip.basis.shape[1]]


def projective_term(b: GradedAlgebra, summands: list) -> ProjTerm:
    projs = indecomposable_projectives(b)
    mods = []
    offs = []
    o = 0
    for c, w in summands:
        m = projs[c].module
        mods.append(GradedModule(b, m.weights + w, m.action))
        offs.append(o)
        o += m.dim
    module = direct_sum(mods, algebra=b)
    return ProjTerm(list(summands), module, offs)


def projective_cover(m: GradedModule) -> tuple[ProjTerm, np.ndarray, list]:
    """Minimal graded projective cover ``P -> M``; returns (P, map, generator images)."""
    b, p = m.algebra, m.p
    projs = indecomposable_projectives(b)
    radm = radical_of_module(m)
    summands = []
    vecs = []
    for c, ip in enumerate(projs):
        re = m.act_element(ip.idem)
        erad = la.matmul(re, radm, p) if radm.shape[1] else np.zeros((m.dim, 0), dtype=np.int64)
        for w in m.weight_set:
            idx = m.at(w)
            em, _ = la.column_basis(re[np.ix_(idx, idx)], p)
            if em.shape[1] == 0:
                continue
            er, _ = la.column_basis(erad[idx], p) if erad.shape[1] else (np.zeros((len(idx), 0), dtype=np.int64), [])
            # complement of e rad M inside e M
            eb = la.EchelonBasis(len(idx), p)
            for j in range(er.shape[1]):
                eb.add(er[:, j])
            for j in range(em.shape[1]):
                if eb.add(em[:, j]):
                    v = np.zeros(m.dim, dtype=np.int64)
                    v[idx] = em[:, j]
                    summands.append((c, w))
                    vecs.append(v)
    pt = projective_term(b, summands)
    cover = np.zeros((m.dim, pt.module.dim), dtype=np.int64)
    for i, (c, w) in enumerate(summands):
        ip = projs[c]
        o = pt.offsets[i]
        for j in range(ip.basis.shape[1]):
            cover[:, o + j] = la.matmul(m.act_element(ip.basis[:, j]), vecs[i][:, None], p)[:, 0]
    cover %= p
    if m.dim and la.rank(cover, p) != m.dim:
        raise ResolutionError("cover", "projective cover is not surjective")
    return pt, cover, vecs


class ProjectiveResolution:
    """Minimal graded projective resolution ``... -> P_1 -> P_0 -> M``."""

    def __init__(self, m: GradedModule, depth: int):
        self.module = m
        self.algebra = m.algebra
        self.terms: list[ProjTerm] = []
        self.diffs: list[np.ndarray] = []  # diffs[j]: P_{j+1} -> P_j
        self.gen_images: list[list] = []  # gen_images[j][l] = d(generator l of P_{j+1}) in P_j
        self.augmentation = None
        self._kernel = None
        self.complete = False
        self.extend(depth)

    @property
    def projs(self):
        return indecomposable_projectives(self.algebra)

    def extend(self, depth: int) -> "ProjectiveResolution":
        p = self.algebra.p
        while len(self.terms) < depth and not self.complete:
            if not self.terms:
                pt, cov, _ = projective_cover(self.module)
                self.terms.append(pt)
                self.augmentation = cov
                ker, incl = kernel_of(cov, pt.module, self.module)
            else:
                kmod, incl_prev = self._kernel
                pt, cov, vecs = projective_cover(kmod)
                d = la.matmul(incl_prev, cov, p)
                self.terms.append(pt)
                self.diffs.append(d)
                self.gen_images.append([la.matmul(incl_prev, v[:, None], p)[:, 0] for v in vecs])
                ker, incl = kernel_of(d, pt.module, self.terms[-2].module)
            self._kernel = (ker, incl)
            if ker.dim == 0:
                self.complete = True
        return self

    def dims(self) -> list[int]:
        return [t.module.dim for t in self.terms]

    def as_complex(self) -> Complex:
        """The resolution as a cochain complex in degrees ``-(n-1) .. 0``."""
        mods = [t.module for t in reversed(self.terms)]
        diffs = list(reversed(self.diffs))
        return Complex(mods, diffs, start=-(len(mods) - 1), complete=True, algebra=self.algebra)

    def is_minimal(self) -> bool:
        p = self.algebra.p
        for j, d in enumerate(self.diffs):
            tgt = self.terms[j].module
            radp = radical_of_module(tgt)
            if d.size and la.rank(np.hstack([radp, d]), p) != radp.shape[1]:
                return False
        return True

    # ---- Hom(P_., N) via Hom(B e (w), N)_m = (e N)_{w+m}
    def hom_basis(self, n: GradedModule, m: int, j: int) -> list:
        """Per summand of ``P_j``: (basis of ``(e N)_{w+m}`` as columns, pivots, offset)."""
        p = self.algebra.p
        self.extend(j + 1)
        if j >= len(self.terms):
            return []
        projs = self.projs
        lst = []
        tot = 0
        for c, w in self.terms[j].summands:
            idx = n.at(w + m)
            if len(idx) == 0:
                lst.append((np.zeros((n.dim, 0), dtype=np.int64), [], tot))
                continue
            ea = n.act_element(projs[c].idem)
            blk, piv = la.column_basis(ea[np.ix_(idx, idx)], p)
            full = np.zeros((n.dim, blk.shape[1]), dtype=np.int64)
            full[idx] = blk
            lst.append((full, [int(idx[q]) for q in piv], tot))
            tot += blk.shape[1]
        return lst

    @staticmethod
    def basis_dim(basis: list) -> int:
        return sum(b.shape[1] for b, _, _ in basis)

    def vertical(self, n: GradedModule, src: list, tgt: list, j: int) -> np.ndarray:
        """``f -> f o d``: ``Hom(P_j, N) -> Hom(P_{j+1}, N)`` in the given bases."""
        p = self.algebra.p
        projs = self.projs
        mat = np.zeros((self.basis_dim(tgt), self.basis_dim(src)), dtype=np.int64)
        if not mat.size:
            return mat
        imgs = self.gen_images[j]
        for l, (tb, tpiv, toff) in enumerate(tgt):
            if tb.shape[1] == 0:
                continue
            for i, (sb, spiv, soff) in enumerate(src):
                if sb.shape[1] == 0:
                    continue
                elt = self.terms[j].component(imgs[l], i, projs) % p
                if not elt.any():
                    continue
                vals = la.matmul(n.act_element(elt), sb, p)
                mat[toff : toff + tb.shape[1], soff : soff + sb.shape[1]] += vals[tpiv]
        return np.mod(mat, p)

    @staticmethod
    def post(g: np.ndarray, src: list, tgt: list, p: int) -> np.ndarray:
        """``f -> g o f`` for a module map ``g: N -> N'`` (bases over the same ``P_j``)."""
        mat = np.zeros((ProjectiveResolution.basis_dim(tgt), ProjectiveResolution.basis_dim(src)), dtype=np.int64)
        if not mat.size:
            return mat
        for (sb, _, soff), (tb, tpiv, toff) in zip(src, tgt):
            if sb.shape[1] == 0 or tb.shape[1] == 0:
                continue
            vals = la.matmul(g, sb, p)
            mat[toff : toff + tb.shape[1], soff : soff + sb.shape[1]] = vals[tpiv]
        return np.mod(mat, p)

    def hom_cochain(self, n: GradedModule, m: int, upto: int):
        """Cochain complex ``Hom_B(P_j, N)_m`` for ``j <= upto + 1``."""
        from .homcx import VSComplex

        p = self.algebra.p
        self.extend(upto + 2)
        bases = [self.hom_basis(n, m, j) for j in range(min(upto + 2, len(self.terms)))]
        dims = {j: self.basis_dim(b) for j, b in enumerate(bases)}
        diffs = {j: self.vertical(n, bases[j], bases[j + 1], j) for j in range(len(bases) - 1)}
        vs = VSComplex(p, dims, diffs)
        vs.check()
        return vs

    # ---- P_. (x)_B N for a resolution over the opposite algebra: (e A) (x)_A N = e N
    def tensor_chain(self, n: GradedModule, t: int, upto: int):
        """Chain complex ``(P_j (x) N)_t`` as a cochain complex in degrees ``-j``."""
        from .homcx import VSComplex

        p = self.algebra.p
        self.extend(upto + 2)
        projs = self.projs
        bases = []
        for j in range(min(upto + 2, len(self.terms))):
            lst = []
            tot = 0
            for c, w in self.terms[j].summands:
                idx = n.at(t - w)
                if len(idx) == 0:
                    lst.append((np.zeros((n.dim, 0), dtype=np.int64), [], tot))
                    continue
                ea = n.act_element(projs[c].idem)
                blk, piv = la.column_basis(ea[np.ix_(idx, idx)], p)
                full = np.zeros((n.dim, blk.shape[1]), dtype=np.int64)
                full[idx] = blk
                lst.append((full, [int(idx[q]) for q in piv], tot))
                tot += blk.shape[1]
            bases.append(lst)
        dims = {-j: self.basis_dim(b) for j, b in enumerate(bases)}
        diffs = {}
        for j in range(len(bases) - 1):
            src, tgt = bases[j + 1], bases[j]
            mat = np.zeros((self.basis_dim(tgt), self.basis_dim(src)), dtype=np.int64)
            imgs = self.gen_images[j]
            for l, (sb, _, soff) in enumerate(src):
                if sb.shape[1] == 0:
                    continue
                for i, (tb, tpiv, toff) in enumerate(tgt):
                    if tb.shape[1] == 0:
                        continue
                    elt = self.terms[j].component(imgs[l], i, projs) % p
                    if not elt.any():
                        continue
                    vals = la.matmul(n.act_element(elt), sb, p)
                    mat[toff : toff + tb.shape[1], soff : soff + sb.shape[1]] += vals[tpiv]
            diffs[-(j + 1)] = np.mod(mat, p)
        vs = VSComplex(p, dims, diffs)
        vs.check()
        return vs

    def shift_range(self, n: GradedModule, upto: int) -> range:
        ws = [w for t in self.terms[: upto + 2] for _, w in t.summands]
        if not ws or n.dim == 0:
            return range(0)
        return range(int(n.weights.min()) - max(ws), int(n.weights.max()) - min(ws) + 1)


def minimal_projective_resolution(m: GradedModule, depth: int, b: Optional[GradedAlgebra] = None) -> ProjectiveResolution:
    if b is not None and b is not m.algebra:
        m = restrict(m, b)
    return ProjectiveResolution(m, depth)


@dataclass
class InjectiveResolution:
    terms: list
    diffs: list  # diffs[j]: I^j -> I^{j+1}
    augmentation: np.ndarray  # M -> I^0
    projective: ProjectiveResolution

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def as_complex(self) -> Complex:
        return Complex(self.terms, self.diffs, complete=self.projective.complete, algebra=self.terms[0].algebra if self.terms else None)


def minimal_injective_resolution(m: GradedModule, depth: int, b: Optional[GradedAlgebra] = None) -> InjectiveResolution:
    """Dual of the minimal projective resolution of ``M*`` over the opposite algebra."""
    if b is not None and b is not m.algebra:
        m = restrict(m, b)
    pr = ProjectiveResolution(dual(m), depth)
    terms = [dual(t.module) for t in pr.terms]
    diffs = [d.T.copy() for d in pr.diffs]
    aug = pr.augmentation.T.copy()
    # dual(dual(X)) lives over the original algebra object
    terms = [GradedModule(m.algebra, t.weights, t.action, label="I") for t in terms]
    return InjectiveResolution(terms, diffs, aug, pr)


# ---------------------------------------------------------------------------
# Ext, simples and injectivity


def simple_modules(b: GradedAlgebra) -> list[GradedModule]:
    """Tops ``B e / rad(B) e`` of the indecomposable projectives."""
    out = []
    for ip in indecomposable_projectives(b):
        r = radical_of_module(ip.module)
        q, _, _ = quotient(ip.module, r)
        q.label = "S"
        out.append(q)
    return out


def ext_dims(x: GradedModule, y: GradedModule, degrees: Sequence[int], shifts: Optional[Sequence[int]] = None) -> dict:
    """``dim Ext^i_B(X, Y)_m`` through the minimal projective resolution of ``X``."""
    top = max(degrees)
    pr = ProjectiveResolution(x, top + 2)
    shifts = list(pr.shift_range(y, top)) if shifts is None else list(shifts)
    from .homcx import cohomology

    out = {}
    for m in shifts:
        vs = pr.hom_cochain(y, m, top)
        for i in degrees:
            out[(i, m)] = cohomology(vs, i) if i >= 0 else 0
    return out


def ext1_total(s: GradedModule, m: GradedModule) -> int:
    """Total dimension of ``Ext^1(S, M)`` over all weight shifts."""
    if s.algebra is not m.algebra:
        m = restrict(m, s.algebra)
    return sum(ext_dims(s, m, [1]).values())


def injectivity_test(m: GradedModule, b: Optional[GradedAlgebra] = None) -> bool:
    """``Ext^1_B(S, M) = 0`` for all simple ``B``-modules ``S``."""
    b = m.algebra if b is None else b
    mb = restrict(m, b) if b is not m.algebra else m
    if mb.dim == 0:
        return True
    return all(ext1_total(s, mb) == 0 for s in simple_modules(b))


def injective_by_cover(m: GradedModule, b: Optional[GradedAlgebra] = None) -> bool:
    """``M`` injective iff ``M*`` is projective iff its projective cover has the same dimension."""
    b = m.algebra if b is None else b
    mb = restrict(m, b) if b is not m.algebra else m
    pt, _, _ = projective_cover(dual(mb))
    return pt.module.dim == mb.dim


# ---------------------------------------------------------------------------
# A-injective concave resolutions of A>=0-injective modules


def a_injective_concave_resolution(m: GradedModule, depth: int) -> tuple[Complex, np.ndarray]:
    """Iterated ``CoInd_{A>=0}^A Res`` on an ``A>=0``-injective module; terms are ``A``-injective."""
    m = _as_module(m)
    a = m.algebra
    if not injectivity_test(m, a.sub("ge")):
        raise ResolutionError("precondition", "input not A>=0-injective")
    return coresolution(m, "ge", depth, reduced=False)


# ---------------------------------------------------------------------------
# filtration by modules coinduced from A>=0


@dataclass
class FiltrationLayer:
    weight: int
    bottom: GradedModule  # N_min as an A>=0-module
    coinduced: GradedModule
    dim: int


def fifi_filtration(n: GradedModule) -> list[FiltrationLayer]:
    """Peel off ``N -> CoInd_{A>=0}^A(N_min)``, ``v -> (x -> [x v]_min)``, recursively.

    Raises :class:`ResolutionError` ("not A<=0-injective") when a layer map
    fails to be surjective.
    """
    a = n.algebra
    p = a.p
    ge = a.sub("ge")
    layers = []
    cur = n
    level = 0
    while cur.dim:
        wmin = cur.weight_range[0]
        res = restrict(cur, ge)
        upper = la.identity(cur.dim)[:, [i for i in range(cur.dim) if cur.weights[i] > wmin]]
        bottom, proj, _ = quotient(res, upper)
        term, _ = coinduce_data(ge, bottom)
        cd = term.coind
        acts = np.stack([cur.act(x) for x in range(a.dim)], axis=0)
        phi = np.zeros((term.dim, cur.dim), dtype=np.int64)
        for w in cur.weight_set:
            idx = cur.at(w)
            fs = np.einsum("li,xij->jlx", proj, acts[:, :, idx]) % p
            phi[:, idx] = cd.coords(fs, w)
        phi %= p
        if la.rank(phi, p) != term.dim:
            raise ResolutionError(
                "not A<=0-injective",
                f"layer {level}: map onto the coinduced module has rank {la.rank(phi, p)} < {term.dim}",
            )
        layers.append(FiltrationLayer(wmin, bottom, term, term.dim))
        cur, _ = kernel_of(phi, cur, term)
        level += 1
    return layers
