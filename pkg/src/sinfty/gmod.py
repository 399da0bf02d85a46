"""Graded modules, module maps and the functors Res, Ind, CoInd, duals and S.

A :class:`GradedModule` over a :class:`~sinfty.galg.GradedAlgebra` stores a
weight for every basis vector and the action matrix of each algebra
generator.  The action of an arbitrary basis element is assembled lazily
from the generator words of the algebra.  Right modules are left modules
over the opposite algebra.

Weight conventions: ``rho(a)`` sends weight ``w`` to ``w + deg a``; a map of
shift ``m`` sends weight ``w`` to ``w + m``; ``shift(M, n)`` has
``M(n)_w = M_{w+n}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import exactla as la
from .galg import AlgebraError, GradedAlgebra


class ModuleError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class GradedModule:
    """Finite-dimensional graded left module given by generator actions."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        weights: Sequence[int],
        action: dict,
        check: bool = False,
        label: str = "",
        side: str = "left",
    ):
        self.algebra = algebra
        self.weights = np.asarray(weights, dtype=np.int64).reshape(-1)
        self.label = label
        self.side = side
        p = algebra.p
        d = self.dim
        self.action = {}
        for g in algebra.generators:
            mat = action.get(g)
            if mat is None:
                mat = np.zeros((d, d), dtype=np.int64)
            mat = np.mod(np.asarray(mat, dtype=np.int64).reshape(d, d), p)
            self.action[g] = mat
        self._cache: dict[int, np.ndarray] = {}
        if check:
            self.check()

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return int(self.weights.shape[0])

    def __repr__(self) -> str:
        return f"GradedModule({self.label or '?'}, dim={self.dim}, weights={self.weight_range})"

    @property
    def weight_range(self) -> Optional[tuple[int, int]]:
        if self.dim == 0:
            return None
        return int(self.weights.min()), int(self.weights.max())

    @cached_property
    def weight_set(self) -> list[int]:
        return sorted(set(int(w) for w in self.weights))

    def at(self, w: int) -> np.ndarray:
        """Indices of basis vectors of weight ``w``."""
        return self._index.get(int(w), _EMPTY)

    @cached_property
    def _index(self) -> dict[int, np.ndarray]:
        out: dict[int, list[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(int(w), []).append(i)
        return {w: np.asarray(v, dtype=np.int64) for w, v in out.items()}

    def dims_by_weight(self) -> dict[int, int]:
        return {w: int(len(v)) for w, v in sorted(self._index.items())}

    # --------------------------------------------------------------- action
    @cached_property
    def _word_mats(self) -> list[np.ndarray]:
        words, _ = self.algebra.words
        mats: dict[tuple, np.ndarray] = {(): la.identity(self.dim)}
        out = []
        for w in words:
            if w not in mats:
                mats[w] = la.matmul(self.action[w[0]], mats[w[1:]], self.p)
            out.append(mats[w])
        return out

    def act(self, k: int) -> np.ndarray:
        """Matrix of the basis element ``a_k``."""
        if k in self.action:
            return self.action[k]
        if k not in self._cache:
            _, to_words = self.algebra.words
            coeffs = to_words[:, k]
            mat = np.zeros((self.dim, self.dim), dtype=np.int64)
            for w in np.flatnonzero(coeffs):
                mat += int(coeffs[w]) * self._word_mats[w]
            self._cache[k] = np.mod(mat, self.p)
        return self._cache[k]

    def act_element(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        for k in np.flatnonzero(x):
            mat += int(x[k]) * self.act(int(k))
        return np.mod(mat, self.p)

    def check(self) -> None:
        """Grading and representation axioms; raise :class:`ModuleError`."""
        a, p = self.algebra, self.p
        for g, mat in self.action.items():
            d = int(a.degrees[g])
            nz = np.argwhere(mat != 0)
            if nz.size and np.any(self.weights[nz[:, 0]] != self.weights[nz[:, 1]] + d):
                raise ModuleError("grading", f"generator {a.names[g]} does not have degree {d}")
        try:
            words, _ = a.words
        except AlgebraError as exc:  # pragma: no cover
            raise ModuleError("algebra", str(exc)) from exc
        for g in a.generators:
            for j in range(a.dim):
                lhs = la.matmul(self.action[g], self.act(j), p)
                rhs = self.act_element(a.mult[g, j])
                if not np.array_equal(lhs, rhs):
                    raise ModuleError(
                        "relations", f"rho({a.names[g]}) rho({a.names[j]}) != rho of their product"
                    )

    def is_isomorphic_data(self, other: "GradedModule") -> bool:
        return (
            self.algebra.same_as(other.algebra)
            and np.array_equal(self.weights, other.weights)
            and all(np.array_equal(self.action[g], other.action[g]) for g in self.action)
        )

    # ------------------------------------------------------------------ JSON
    def to_dict(self, algebra_ref: str = "") -> dict:
        a = self.algebra
        action = {}
        for g, mat in self.action.items():
            action[a.names[g]] = [[int(r), int(c), int(mat[r, c])] for r, c in np.argwhere(mat != 0)]
        return {
            "algebra": algebra_ref,
            "side": self.side,
            "weights": [int(w) for w in self.weights],
            "action": action,
        }

    @classmethod
    def from_dict(cls, data: dict, algebra: GradedAlgebra) -> "GradedModule":
        try:
            side = data.get("side", "left")
            alg = algebra.opposite() if side == "right" else algebra
            weights = [int(w) for w in data["weights"]]
            d = len(weights)
            given = {}
            for name, trip in data["action"].items():
                mat = np.zeros((d, d), dtype=np.int64)
                for r, c, v in trip:
                    mat[int(r), int(c)] = (mat[int(r), int(c)] + int(v)) % alg.p
                given[alg.index(name)] = mat
        except (KeyError, TypeError, ValueError) as exc:
            raise ModuleError("parse", f"malformed module description ({exc!r})") from exc
        missing = [alg.names[g] for g in alg.generators if g not in given]
        if missing:
            raise ModuleError("parse", f"action of generators {missing} missing")
        mod = cls(alg, weights, {g: given[g] for g in alg.generators}, check=True, side=side)
        for k, mat in given.items():
            if not np.array_equal(mod.act(k), mat):
                raise ModuleError("relations", f"action of {alg.names[k]} inconsistent with generators")
        return mod


_EMPTY = np.zeros(0, dtype=np.int64)


@dataclass
class ModuleMap:
    source: GradedModule
    target: GradedModule
    matrix: np.ndarray
    shift: int = 0

    def is_equivariant(self) -> bool:
        a, p = self.source.algebra, self.source.p
        for g in a.generators:
            lhs = la.matmul(self.matrix, self.source.action[g], p)
            rhs = la.matmul(self.target.action[g], self.matrix, p)
            if not np.array_equal(lhs, rhs):
                return False
        return is_homogeneous(self.matrix, self.source, self.target, self.shift)


def is_homogeneous(mat, source: GradedModule, target: GradedModule, shift: int) -> bool:
    nz = np.argwhere(np.asarray(mat) != 0)
    if nz.size == 0:
        return True
    return bool(np.all(target.weights[nz[:, 0]] == source.weights[nz[:, 1]] + shift))


# ---------------------------------------------------------------------------
# elementary constructions


def zero_module(a: GradedAlgebra) -> GradedModule:
    return GradedModule(a, [], {})


def regular_module(a: GradedAlgebra) -> GradedModule:
    """``A`` as a left module over itself."""
    return GradedModule(a, a.degrees, {g: a.left_mult[g] for g in a.generators}, label="A")


def restrict(m: GradedModule, b: GradedAlgebra) -> GradedModule:
    """Restriction to a subalgebra ``b`` (``b.parent`` is the algebra of ``m``)."""
    if b is m.algebra or b.same_as(m.algebra) and b.parent is None:
        return m
    if b.parent is None or not b.parent.same_as(m.algebra):
        raise ModuleError("restrict", "not a subalgebra of the module's algebra")
    action = {g: m.act(b.embedding[g]) for g in b.generators}
    return GradedModule(b, m.weights, action, label=f"Res({m.label})")


def shift(m: GradedModule, n: int) -> GradedModule:
    """``M(n)`` with ``M(n)_w = M_{w+n}``."""
    return GradedModule(m.algebra, m.weights - n, m.action, label=f"{m.label}({n})", side=m.side)


def direct_sum(mods: Sequence[GradedModule], algebra: Optional[GradedAlgebra] = None) -> GradedModule:
    if not mods:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_module(algebra)
    a = mods[0].algebra
    weights = np.concatenate([m.weights for m in mods]) if mods else []
    action = {g: la.block_diag([m.action[g] for m in mods]) for g in a.generators}
    return GradedModule(a, weights, action, label="+".join(m.label for m in mods))


def dual(m: GradedModule) -> GradedModule:
    """Linear dual ``M*``, a left module over the opposite algebra, weights negated."""
    op = m.algebra.opposite()
    side = "right" if m.side == "left" else "left"
    return GradedModule(op, -m.weights, {g: m.action[g].T.copy() for g in op.generators}, label=f"{m.label}*", side=side)


def _blocks_for_weights(weights: np.ndarray, cols: np.ndarray) -> dict[int, np.ndarray]:
    """Group columns (homogeneous vectors) by weight."""
    out: dict[int, list[int]] = {}
    for j in range(cols.shape[1]):
        nz = np.flatnonzero(cols[:, j])
        if nz.size == 0:
            continue
        ws = set(int(w) for w in weights[nz])
        if len(ws) != 1:
            raise ModuleError("grading", "vector is not weight-homogeneous")
        out.setdefault(ws.pop(), []).append(j)
    return {w: np.asarray(v) for w, v in out.items()}


def homogeneous_span(m: GradedModule, vecs: np.ndarray) -> np.ndarray:
    """Reduced homogeneous basis of the span of homogeneous column vectors."""
    vecs = np.asarray(vecs, dtype=np.int64).reshape(m.dim, -1)
    cols = []
    for w, js in sorted(_blocks_for_weights(m.weights, vecs).items()):
        idx = m.at(w)
        basis, _ = la.column_basis(vecs[np.ix_(idx, js)], m.p)
        full = np.zeros((m.dim, basis.shape[1]), dtype=np.int64)
        full[idx] = basis
        cols.append(full)
    if not cols:
        return np.zeros((m.dim, 0), dtype=np.int64)
    return np.hstack(cols)


def split_homogeneous(m: GradedModule, vecs: np.ndarray) -> np.ndarray:
    """Split arbitrary vectors into their weight components."""
    vecs = np.asarray(vecs, dtype=np.int64).reshape(m.dim, -1)
    parts = []
    for w in m.weight_set:
        idx = m.at(w)
        part = np.zeros_like(vecs)
        part[idx] = vecs[idx]
        parts.append(part)
    return np.hstack(parts) if parts else vecs


def submodule_closure(m: GradedModule, vecs: np.ndarray) -> np.ndarray:
    """Homogeneous basis of the submodule generated by the given vectors."""
    p = m.p
    vecs = split_homogeneous(m, vecs)
    eb = la.EchelonBasis(m.dim, p)
    frontier = []
    for j in range(vecs.shape[1]):
        if eb.add(vecs[:, j]):
            frontier.append(vecs[:, j])
    gens = list(m.action.values())
    while frontier:
        block = np.stack(frontier, axis=1)
        frontier = []
        for mat in gens:
            img = la.matmul(mat, block, p)
            for j in range(img.shape[1]):
                if eb.add(img[:, j]):
                    frontier.append(img[:, j])
    if eb.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    return homogeneous_span(m, eb.rows.T)


def submodule(m: GradedModule, vecs: np.ndarray, closed: bool = False) -> tuple[GradedModule, np.ndarray]:
    """Submodule spanned (or generated, unless ``closed``) by homogeneous vectors.

    Returns the module and the inclusion matrix (columns = basis in ``m``).
    """
    basis = homogeneous_span(m, vecs) if closed else submodule_closure(m, vecs)
    p = m.p
    piv = [int(np.flatnonzero(basis[:, j])[0]) for j in range(basis.shape[1])]
    # coordinates: solve basis @ c = v; basis is block-reduced so use solve once per generator
    weights = np.array(
        [int(m.weights[piv[j]]) for j in range(basis.shape[1])], dtype=np.int64
    )
    action = {}
    for g, mat in m.action.items():
        img = la.matmul(mat, basis, p)
        action[g] = _coords_in(basis, img, p)
    return GradedModule(m.algebra, weights, action, label=f"sub({m.label})", side=m.side), basis


def _coords_in(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    if basis.shape[1] == 0:
        return np.zeros((0, vecs.shape[1]), dtype=np.int64)
    x = la.solve(basis, vecs, p)
    if x is None:
        raise ModuleError("submodule", "vectors leave the subspace")
    return x


def quotient(m: GradedModule, vecs: np.ndarray) -> tuple[GradedModule, np.ndarray, np.ndarray]:
    """Quotient by the submodule spanned by the homogeneous columns ``vecs``.

    ``vecs`` must already span a submodule.  Returns ``(Q, projection, section)``.
    """
    p = m.p
    basis = homogeneous_span(m, vecs)
    by_w = _blocks_for_weights(m.weights, basis) if basis.shape[1] else {}
    proj_rows = []
    sect_cols = []
    weights = []
    for w in m.weight_set:
        idx = m.at(w)
        sub = basis[np.ix_(idx, by_w[w])] if w in by_w else np.zeros((len(idx), 0), dtype=np.int64)
        pr, se = la.quotient_basis(len(idx), sub, p)
        full_pr = np.zeros((pr.shape[0], m.dim), dtype=np.int64)
        full_pr[:, idx] = pr
        full_se = np.zeros((m.dim, se.shape[1]), dtype=np.int64)
        full_se[idx] = se
        proj_rows.append(full_pr)
        sect_cols.append(full_se)
        weights.extend([w] * pr.shape[0])
    if proj_rows:
        proj = np.vstack(proj_rows)
        sect = np.hstack(sect_cols)
    else:
        proj = np.zeros((0, m.dim), dtype=np.int64)
        sect = np.zeros((m.dim, 0), dtype=np.int64)
    action = {g: la.matmul(la.matmul(proj, mat, p), sect, p) for g, mat in m.action.items()}
    q = GradedModule(m.algebra, weights, action, label=f"{m.label}/sub", side=m.side)
    return q, proj, sect


def kernel_of(mat: np.ndarray, source: GradedModule, target: GradedModule, shift_: int = 0):
    """Kernel submodule of a homogeneous module map (as a matrix)."""
    p = source.p
    cols = []
    for w in source.weight_set:
        idx = source.at(w)
        tidx = target.at(w + shift_)
        block = mat[np.ix_(tidx, idx)] if len(tidx) else np.zeros((0, len(idx)), dtype=np.int64)
        ker, _ = la.nullspace(block, p)
        full = np.zeros((source.dim, ker.shape[1]), dtype=np.int64)
        full[idx] = ker
        cols.append(full)
    vecs = np.hstack(cols) if cols else np.zeros((source.dim, 0), dtype=np.int64)
    return submodule(source, vecs, closed=True)


def image_of(mat: np.ndarray, source: GradedModule, target: GradedModule):
    vecs = la.matmul(mat, la.identity(source.dim), target.p) if source.dim else np.zeros((target.dim, 0), dtype=np.int64)
    return submodule(target, split_homogeneous(target, vecs), closed=True)


def cokernel_of(mat: np.ndarray, source: GradedModule, target: GradedModule):
    vecs = split_homogeneous(target, np.asarray(mat, dtype=np.int64).reshape(target.dim, -1))
    return quotient(target, vecs)


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """Basis of ``Hom_A(M, N)`` in shift ``m`` (maps ``M_w -> N_{w+m}``).

    ``maps`` has shape ``(k, dim N, dim M)``.  ``coords(F)`` returns the
    coordinates of an equivariant map in this basis by reading its entries
    at the free positions of the kernel computation.
    """

    def __init__(self, source: GradedModule, target: GradedModule, shift_: int, blocks, basis, free):
        self.source = source
        self.target = target
        self.shift = shift_
        self.blocks = blocks  # list of (w, tgt_idx, src_idx, offset)
        self.basis = basis  # (nvars, k)
        self.free = list(free)
        self.nvars = basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vec_of(self, mat: np.ndarray) -> np.ndarray:
        out = np.zeros(self.nvars, dtype=np.int64)
        for _, t, s, off in self.blocks:
            out[off : off + len(t) * len(s)] = mat[np.ix_(t, s)].ravel()
        return out

    def mat_of(self, vec: np.ndarray) -> np.ndarray:
        out = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        for _, t, s, off in self.blocks:
            out[np.ix_(t, s)] = vec[off : off + len(t) * len(s)].reshape(len(t), len(s))
        return out

    @cached_property
    def maps(self) -> np.ndarray:
        k = self.dim
        out = np.zeros((k, self.target.dim, self.source.dim), dtype=np.int64)
        for j in range(k):
            out[j] = self.mat_of(self.basis[:, j])
        return out

    def coords(self, mat: np.ndarray) -> np.ndarray:
        return np.mod(self.vec_of(mat)[self.free], self.source.p)

    def coords_many(self, mats: np.ndarray) -> np.ndarray:
        """Coordinates of a stack ``(r, dim N, dim M)`` as columns ``(k, r)``."""
        if mats.shape[0] == 0:
            return np.zeros((self.dim, 0), dtype=np.int64)
        # gather the free entries directly
        rows, cols = self._free_entries
        return np.mod(mats[:, rows, cols].T, self.source.p)

    @cached_property
    def _free_entries(self):
        rows = np.zeros(len(self.free), dtype=np.int64)
        cols = np.zeros(len(self.free), dtype=np.int64)
        lookup = []
        for _, t, s, off in self.blocks:
            lookup.append((off, off + len(t) * len(s), t, s))
        for j, f in enumerate(self.free):
            for lo, hi, t, s in lookup:
                if lo <= f < hi:
                    r, c = divmod(f - lo, len(s))
                    rows[j] = t[r]
                    cols[j] = s[c]
                    break
        return rows, cols


def hom_space(m: GradedModule, n: GradedModule, shift_: int = 0) -> HomSpace:
    """Equivariant maps of weight shift ``shift_`` via the equivariance kernel.

    Degree-zero generators are imposed blockwise first, the remaining
    generators then couple neighbouring weight blocks.
    """
    a, p = m.algebra, m.p
    if not a.same_as(n.algebra):
        raise ModuleError("hom", "modules over different algebras")
    blocks = []
    off = 0
    for w in m.weight_set:
        t = n.at(w + shift_)
        if len(t) == 0:
            continue
        s = m.at(w)
        blocks.append((w, t, s, off))
        off += len(t) * len(s)
    nvars = off
    if nvars == 0:
        return HomSpace(m, n, shift_, blocks, np.zeros((0, 0), dtype=np.int64), [])
    gens0 = [g for g in a.generators if a.degrees[g] == 0]
    gens1 = [g for g in a.generators if a.degrees[g] != 0]
    # stage 1: blockwise degree-zero constraints
    stage = []
    for w, t, s, o in blocks:
        rows = []
        for g in gens0:
            xn = n.action[g][np.ix_(t, t)]
            xm = m.action[g][np.ix_(s, s)]
            rows.append(np.kron(xn, la.identity(len(s))) - np.kron(la.identity(len(t)), xm.T))
        eqs = np.mod(np.vstack(rows), p) if rows else np.zeros((0, len(t) * len(s)), dtype=np.int64)
        ker, free = la.nullspace(eqs, p)
        stage.append((ker, free))
    k1_sizes = [k.shape[1] for k, _ in stage]
    k1_off = np.concatenate([[0], np.cumsum(k1_sizes)]).astype(int)
    total1 = int(k1_off[-1])
    block_of = {w: i for i, (w, _, _, _) in enumerate(blocks)}
    # stage 2: coupling constraints, expressed in stage-1 coordinates
    eq_rows = []
    for g in gens1:
        d = int(a.degrees[g])
        for w in m.weight_set:
            i = block_of.get(w)
            j = block_of.get(w + d)
            if i is None and j is None:
                continue
            tt = n.at(w + shift_ + d)
            if len(tt) == 0:
                continue
            s = m.at(w)
            parts = np.zeros((len(tt) * len(s), total1), dtype=np.int64)
            if i is not None:
                t = blocks[i][1]
                left = np.kron(n.action[g][np.ix_(tt, t)], la.identity(len(s)))  # from F_w
                parts[:, k1_off[i] : k1_off[i + 1]] += la.matmul(left, stage[i][0], p)
            if j is not None:
                s2 = blocks[j][2]
                right = np.kron(la.identity(len(tt)), m.action[g][np.ix_(s2, s)].T)  # from F_{w+d}
                parts[:, k1_off[j] : k1_off[j + 1]] -= la.matmul(right, stage[j][0], p)
            eq_rows.append(np.mod(parts, p))
    eqs = np.vstack(eq_rows) if eq_rows else np.zeros((0, total1), dtype=np.int64)
    eqs = eqs[np.any(eqs != 0, axis=1)] if eqs.size else eqs
    ker2, free2 = la.nullspace(eqs, p)
    # assemble
    k1 = np.zeros((nvars, total1), dtype=np.int64)
    free1: list[int] = []
    for i, (w, t, s, o) in enumerate(blocks):
        ker, free = stage[i]
        k1[o : o + len(t) * len(s), k1_off[i] : k1_off[i + 1]] = ker
        free1.extend(o + f for f in free)
    basis = la.matmul(k1, ker2, p) if ker2.shape[1] else np.zeros((nvars, 0), dtype=np.int64)
    free = [free1[f] for f in free2]
    return HomSpace(m, n, shift_, blocks, basis, free)


def shift_range(m: GradedModule, n: GradedModule) -> range:
    """Shifts at which a homogeneous linear map ``M -> N`` can be nonzero."""
    if m.dim == 0 or n.dim == 0:
        return range(0)
    lo = int(n.weights.min() - m.weights.max())
    hi = int(n.weights.max() - m.weights.min())
    return range(lo, hi + 1)


def hom_total(m: GradedModule, n: GradedModule) -> dict[int, HomSpace]:
    return {s: h for s in shift_range(m, n) if (h := hom_space(m, n, s)).dim}


# ---------------------------------------------------------------------------
# induction and coinduction


def coinduce(b: GradedAlgebra, m: GradedModule) -> GradedModule:
    """``CoInd_B^A M = Hom_B(A, M)`` with ``(a f)(x) = f(x a)``.

    Returned together with nothing else; the evaluation data is available
    through :func:`coinduce_data`.
    """
    return coinduce_data(b, m)[0]


def coinduce_data(b: GradedAlgebra, m: GradedModule):
    """Coinduced module plus its basis as stacked maps ``(k, dim M, dim A)``."""
    a = b.parent if b.parent is not None else b
    p = a.p
    if b is a:
        maps = np.stack([_eval_rows(m, i, a) for i in range(m.dim)]) if m.dim else np.zeros((0, 0, a.dim), dtype=np.int64)
        return m, maps
    areg = restrict(regular_module(a), b)
    spaces = []
    weights = []
    for s in shift_range(areg, m):
        h = hom_space(areg, m, s)
        if h.dim:
            spaces.append(h)
            weights.extend([s] * h.dim)
    if not spaces:
        return zero_module(a), np.zeros((0, m.dim, a.dim), dtype=np.int64)
    maps = np.concatenate([h.maps for h in spaces], axis=0)
    offsets = {}
    o = 0
    for h in spaces:
        offsets[h.shift] = (o, h)
        o += h.dim
    total = o
    action = {}
    for g in a.generators:
        d = int(a.degrees[g])
        mat = np.zeros((total, total), dtype=np.int64)
        rg = a.right_mult[g]
        for s, (o1, h) in offsets.items():
            k, r, c = h.maps.shape
            img = la.matmul(h.maps.reshape(k * r, c), rg, p).reshape(k, r, -1)  # f -> f R_g
            if s + d not in offsets:
                continue
            o2, h2 = offsets[s + d]
            mat[o2 : o2 + h2.dim, o1 : o1 + h.dim] = h2.coords_many(img)
        action[g] = mat
    mod = GradedModule(a, weights, action, label=f"CoInd({m.label})")
    mod.coind = CoindData(b, m, maps, offsets)
    return mod, maps


@dataclass
class CoindData:
    """How a coinduced module sits inside ``Hom(A, M)``."""

    sub: GradedAlgebra
    inner: GradedModule
    maps: np.ndarray
    offsets: dict  # shift -> (offset, HomSpace)

    def coords(self, mats: np.ndarray, shift_: int) -> np.ndarray:
        """Coordinates (full length) of B-linear maps ``A -> M`` of the given shift."""
        out = np.zeros((self.maps.shape[0], mats.shape[0]), dtype=np.int64)
        if shift_ in self.offsets:
            o, h = self.offsets[shift_]
            out[o : o + h.dim] = h.coords_many(mats)
        return out


def _eval_rows(m: GradedModule, i: int, a: GradedAlgebra) -> np.ndarray:
    # map x -> x . v_i as a dim M x dim A matrix
    out = np.zeros((m.dim, a.dim), dtype=np.int64)
    for k in range(a.dim):
        out[:, k] = m.act(k)[:, i]
    return out


def induce(b: GradedAlgebra, m: GradedModule) -> GradedModule:
    """``A (x)_B M`` as the quotient of ``A (x) M`` by the balancing relations."""
    return induce_data(b, m)[0]


def induce_data(b: GradedAlgebra, m: GradedModule):
    """Induced module with the projection from ``A (x) M`` (index ``a * dim M + i``)."""
    a = b.parent if b.parent is not None else b
    p = a.p
    if b is a:
        return m, None
    n, d = a.dim, m.dim
    big_w = (a.degrees[:, None] + m.weights[None, :]).ravel()
    rels = []
    for g in b.generators:
        ag = b.embedding[g]
        rho = m.action[g]
        # a_x b (x) v - a_x (x) b v  for all x, v
        part1 = np.kron(a.right_mult[ag], la.identity(d))  # columns (x, v) -> (x b, v)
        part2 = np.kron(la.identity(n), rho)
        rels.append(np.mod(part1 - part2, p))
    rel = np.hstack(rels) if rels else np.zeros((n * d, 0), dtype=np.int64)
    big = GradedModule(a, big_w, {g: np.kron(a.left_mult[g], la.identity(d)) for g in a.generators})
    rel = split_homogeneous(big, rel)
    q, proj, sect = quotient(big, rel)
    q.label = f"Ind({m.label})"
    return q, proj


# ---------------------------------------------------------------------------
# coregular bimodule, duals, S


def coregular(a: GradedAlgebra) -> tuple[GradedModule, GradedModule]:
    """``A*`` as a left A-module and as a right A-module (left over ``A^op``).

    Left action ``(a phi)(x) = phi(x a)``, right action ``(phi a)(x) = phi(a x)``;
    the functional dual to a basis vector of degree ``w`` has weight ``-w``.
    """
    left = GradedModule(a, -a.degrees, {g: a.right_mult[g].T.copy() for g in a.generators}, label="A*")
    op = a.opposite()
    right = GradedModule(op, -a.degrees, {g: a.left_mult[g].T.copy() for g in op.generators}, label="A*", side="right")
    return left, right


def dual_comparison(m: GradedModule) -> dict[int, np.ndarray]:
    """The natural map ``M* -> Hom_A(M, A*)``, ``f -> (v -> (x -> f(x v)))``.

    Returns, for every shift, the matrix of the map from the weight
    component of ``M*`` into the coordinates of the Hom space.
    """
    a, p = m.algebra, m.p
    astar, _ = coregular(a)
    out = {}
    # image of the dual basis functional f_i: v_j -> phi with phi(a_k) = (a_k v_j)_i
    acts = np.stack([m.act(k) for k in range(a.dim)], axis=0) if a.dim else np.zeros((0, m.dim, m.dim))
    for s in sorted(set(int(-w) for w in m.weights)):
        idx = np.flatnonzero(-m.weights == s)
        h = hom_space(m, astar, s)
        mats = np.zeros((len(idx), a.dim, m.dim), dtype=np.int64)
        for c, i in enumerate(idx):
            mats[c] = acts[:, i, :]  # row k: phi_j(a_k) = (a_k v_j)_i
        out[s] = (h, h.coords_many(mats) if h.dim else np.zeros((0, len(idx)), dtype=np.int64), mats)
    return out


def check_dual(m: GradedModule) -> GradedModule:
    """``M^`` as the linear dual with its right action, after verifying that
    the comparison with ``Hom_A(M, A*)`` is bijective in every shift."""
    md = dual(m)
    for s, (h, coords, mats) in dual_comparison(m).items():
        n_src = mats.shape[0]
        if h.dim != n_src or (n_src and la.rank(coords, m.p) != n_src):
            raise RuntimeError(f"dual comparison not bijective in shift {s}")
        # the images must be equivariant, i.e. reconstructible from coordinates
        if n_src and not np.array_equal(np.mod(np.einsum("kc,kij->cij", coords, h.maps), m.p), np.mod(mats, m.p)):
            raise RuntimeError("dual comparison map is not A-linear")
    return md


def s_zero_data(n: GradedModule):
    """``S(N)`` in degree 0: ``Hom_A(A*, N)`` with action through the right action on ``A*``.

    Returns the module and the stacked basis maps ``(k, dim N, dim A)``.
    """
    a, p = n.algebra, n.p
    astar, astar_r = coregular(a)
    spaces = [h for s in shift_range(astar, n) if (h := hom_space(astar, n, s)).dim]
    if not spaces:
        return zero_module(a), np.zeros((0, n.dim, a.dim), dtype=np.int64)
    weights = []
    offs = {}
    o = 0
    for h in spaces:
        offs[h.shift] = (o, h)
        weights.extend([h.shift] * h.dim)
        o += h.dim
    action = {}
    for g in a.generators:
        d = int(a.degrees[g])
        mat = np.zeros((o, o), dtype=np.int64)
        r = astar_r.action[g]  # phi -> phi . g
        for s, (o1, h) in offs.items():
            if s + d not in offs:
                continue
            img = np.mod(np.einsum("kij,jl->kil", h.maps, r), p)
            o2, h2 = offs[s + d]
            mat[o2 : o2 + h2.dim, o1 : o1 + h.dim] = h2.coords_many(img)
        action[g] = mat
    maps = np.concatenate([h.maps for h in spaces], axis=0)
    return GradedModule(a, weights, action, label=f"S({n.label})"), maps


def s_zero(n: GradedModule) -> GradedModule:
    return s_zero_data(n)[0]


@dataclass
class GradedSpace:
    """A graded vector space presented as a quotient of ``M (x) N``."""

    weights: np.ndarray
    projection: np.ndarray  # (dim, dim M * dim N)

    @property
    def dim(self) -> int:
        return int(self.weights.shape[0])

    def dims_by_weight(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.weights:
            out[int(w)] = out.get(int(w), 0) + 1
        return dict(sorted(out.items()))


def tensor_over_A(mr: GradedModule, nl: GradedModule) -> GradedSpace:
    """``M (x)_A N`` for a right module ``mr`` (over ``A^op``) and left module ``nl``."""
    a = nl.algebra
    if not mr.algebra.same_as(a.opposite()):
        raise ModuleError("tensor", "first argument must be a right module over the same algebra")
    p = a.p
    dm, dn = mr.dim, nl.dim
    weights = (mr.weights[:, None] + nl.weights[None, :]).ravel()
    rels = []
    for g in a.generators:
        # m.g (x) n - m (x) g.n ; right action of g on m is mr.action[g]
        r = np.kron(mr.action[g], la.identity(dn)) - np.kron(la.identity(dm), nl.action[g])
        rels.append(np.mod(r, p))
    rel = np.hstack(rels) if rels else np.zeros((dm * dn, 0), dtype=np.int64)
    space = GradedModule(a, weights, {})
    rel = split_homogeneous(space, rel)
    basis = homogeneous_span(space, rel)
    by_w = _blocks_for_weights(weights, basis) if basis.shape[1] else {}
    rows = []
    ws = []
    for w in space.weight_set:
        idx = space.at(w)
        sub = basis[np.ix_(idx, by_w[w])] if w in by_w else np.zeros((len(idx), 0), dtype=np.int64)
        pr, _ = la.quotient_basis(len(idx), sub, p)
        full = np.zeros((pr.shape[0], dm * dn), dtype=np.int64)
        full[:, idx] = pr
        rows.append(full)
        ws.extend([w] * pr.shape[0])
    proj = np.vstack(rows) if rows else np.zeros((0, dm * dn), dtype=np.int64)
    return GradedSpace(np.asarray(ws, dtype=np.int64), proj)


# ---------------------------------------------------------------------------
# natural maps used as runtime checks


def resind_map(m: GradedModule):
    """The map ``Res_{A<=0} CoInd_{A>=0}^A M -> CoInd_{A0}^{A<=0} Res_{A0} M``.

    ``f -> f|_{A<=0}``.  ``m`` is a module over ``A>=0``.  Returns
    ``(source, target, matrix)``; an isomorphism under the triangular
    decomposition.
    """
    ge = m.algebra
    a = ge.parent
    le = a.sub("le")
    ci, maps = coinduce_data(ge, m)
    src = restrict(ci, le)
    a0_le = sub_of(le, a.sub("a0").embedding, "a0<le")
    a0_ge = sub_of(ge, a.sub("a0").embedding, "a0<ge")
    m0 = GradedModule(a0_le, m.weights, {g: m.act(a0_ge.embedding[g]) for g in a0_ge.generators})
    tgt, tmaps = coinduce_data(a0_le, m0)
    restricted = maps[:, :, list(le.embedding)]
    mat = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    readers = {s: (int(tgt.at(s)[0]), _StackCoords(tmaps[tgt.at(s)], a.p)) for s in tgt.weight_set}
    for j in range(src.dim):
        s = int(src.weights[j])
        if s not in readers:
            raise ModuleError("resind", "restriction lands outside the target")
        o, r = readers[s]
        mat[o : o + r.dim, j] = r.coords(restricted[j])
    return src, tgt, np.mod(mat, a.p)


class _StackCoords:
    def __init__(self, maps: np.ndarray, p: int):
        self.p = p
        self.dim = maps.shape[0]
        self._flat = maps.reshape(self.dim, -1).T

    def coords(self, mat: np.ndarray) -> np.ndarray:
        x = la.solve(self._flat, mat.ravel(), self.p)
        if x is None:
            raise ModuleError("coords", "map not in the span")
        return x


def sub_of(big: GradedAlgebra, parent_indices, label: str) -> GradedAlgebra:
    """Subalgebra of ``big`` given by indices into ``big.parent``; cached on ``big``."""
    cache = big.__dict__.setdefault("_subs_of", {})
    key = tuple(parent_indices)
    if key not in cache:
        pos = {i: k for k, i in enumerate(big.embedding)}
        cache[key] = big.subalgebra([pos[i] for i in parent_indices], label=label)
    return cache[key]
