"""Cochain complexes of graded modules, Hom complexes and cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import exactla as la
from .gmod import GradedModule, HomSpace, hom_space, is_homogeneous, zero_module


class Inconclusive(RuntimeError):
    def __init__(self, message: str, required_depth: Optional[int] = None):
        super().__init__(message)
        self.required_depth = required_depth


class ComplexError(ValueError):
    pass


@dataclass
class WeightProfile:
    ranges: list  # (min, max) or None per stored term

    def max_weights(self):
        return [r[1] if r else None for r in self.ranges]

    def min_weights(self):
        return [r[0] if r else None for r in self.ranges]


class Complex:
    """A bounded-below complex ``terms[0] -> terms[1] -> ...`` starting in degree ``start``.

    ``diffs[k]`` is the matrix of ``terms[k] -> terms[k+1]``.  When
    ``complete`` is false the stored terms are a prefix and ``extender``
    (if set) produces the next term and differential.  ``direction`` is
    ``"down"``/``"up"`` when the continuation rule guarantees that the
    maximal (resp. minimal) weight moves by at least one per step.
    """

    def __init__(
        self,
        terms: Sequence[GradedModule],
        diffs: Sequence[np.ndarray],
        start: int = 0,
        complete: bool = True,
        extender: Optional[Callable[["Complex"], tuple]] = None,
        direction: Optional[str] = None,
        algebra=None,
    ):
        self.terms = list(terms)
        self.diffs = [np.asarray(d, dtype=np.int64) for d in diffs]
        self.start = start
        self.complete = complete
        self.extender = extender
        self.direction = direction
        self.algebra = algebra if algebra is not None else (self.terms[0].algebra if self.terms else None)
        if len(self.diffs) not in (len(self.terms) - 1, len(self.terms)) and self.terms:
            raise ComplexError("need one differential between consecutive terms")
        for k in range(len(self.terms) - 1):
            self._check_step(k)

    @property
    def p(self) -> int:
        return self.algebra.p

    def __len__(self) -> int:
        return len(self.terms)

    def _check_step(self, k: int) -> None:
        d = self.diffs[k]
        src, tgt = self.terms[k], self.terms[k + 1]
        if d.shape != (tgt.dim, src.dim):
            raise ComplexError(f"differential {k} has shape {d.shape}, expected {(tgt.dim, src.dim)}")
        if k > 0 and src.dim and np.any(la.matmul(d, self.diffs[k - 1], self.p)):
            raise ComplexError(f"d o d != 0 at position {k}")
        if src.dim and tgt.dim and d.any():
            if not is_homogeneous(d, src, tgt, 0):
                raise ComplexError(f"differential {k} does not preserve weights")
            for g in src.action:
                if not np.array_equal(la.matmul(d, src.action[g], self.p), la.matmul(tgt.action[g], d, self.p)):
                    raise ComplexError(f"differential {k} is not a module map")

    def extend_to(self, depth: int) -> "Complex":
        while len(self.terms) < depth and not self.complete:
            if self.extender is None:
                raise Inconclusive("complex prefix cannot be extended", depth)
            term, diff = self.extender(self)
            if len(self.diffs) < len(self.terms):
                self.diffs.append(diff)
            self.terms.append(term)
            self._check_step(len(self.terms) - 2)
        return self

    def term(self, k: int) -> GradedModule:
        """Term at position ``k`` (degree ``start + k``); zero past a complete end."""
        if 0 <= k < len(self.terms):
            return self.terms[k]
        if k < 0 or self.complete:
            return zero_module(self.algebra)
        raise Inconclusive(f"term {k} not built", k + 1)

    def diff(self, k: int) -> np.ndarray:
        src, tgt = self.term(k), self.term(k + 1)
        if 0 <= k < len(self.diffs) and k + 1 < len(self.terms):
            return self.diffs[k]
        return np.zeros((tgt.dim, src.dim), dtype=np.int64)

    def profile(self) -> WeightProfile:
        return WeightProfile([t.weight_range for t in self.terms])

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def module_complex(m: GradedModule) -> Complex:
    return Complex([m], [], complete=True)


def _monotone(values, sign: int) -> bool:
    vals = [v for v in values if v is not None]
    return all(sign * (b - a) >= 1 for a, b in zip(vals, vals[1:]))


def is_convex(c: Complex) -> tuple[bool, WeightProfile]:
    prof = c.profile()
    if c.complete:
        return True, prof
    if c.direction == "down" and _monotone(prof.max_weights(), -1):
        return True, prof
    if c.direction == "up" and any(t.dim for t in c.terms):
        return False, prof
    raise Inconclusive("no continuation rule to certify convexity", len(c) + 1)


def is_concave(c: Complex) -> tuple[bool, WeightProfile]:
    prof = c.profile()
    if c.complete:
        return True, prof
    if c.direction == "up" and _monotone(prof.min_weights(), 1):
        return True, prof
    if c.direction == "down" and any(t.dim for t in c.terms):
        return False, prof
    raise Inconclusive("no continuation rule to certify concavity", len(c) + 1)


def max_weight_bound(c: Complex, k: int) -> Optional[float]:
    """Upper bound on weights of term ``k`` (``-inf`` if it is zero)."""
    if k < len(c.terms):
        r = c.terms[k].weight_range
        return -np.inf if r is None else r[1]
    if c.complete:
        return -np.inf
    if c.direction != "down":
        return None
    last = max((j for j in range(len(c.terms)) if c.terms[j].dim), default=None)
    if last is None:
        return -np.inf  # a zero term ends every resolution built here
    return c.terms[last].weight_range[1] - (k - last)


def min_weight_bound(c: Complex, k: int) -> Optional[float]:
    if k < len(c.terms):
        r = c.terms[k].weight_range
        return np.inf if r is None else r[0]
    if c.complete:
        return np.inf
    if c.direction != "up":
        return None
    last = max((j for j in range(len(c.terms)) if c.terms[j].dim), default=None)
    if last is None:
        return np.inf
    return c.terms[last].weight_range[0] + (k - last)


def stupid_truncation(c: Complex, n: int) -> tuple[Complex, list[np.ndarray]]:
    """Quotient complex of the terms in positions ``< n`` and the projection maps."""
    c.extend_to(n)
    k = min(n, len(c.terms))
    terms = c.terms[:k]
    diffs = c.diffs[: max(0, k - 1)]
    proj = [la.identity(t.dim) for t in terms]
    return Complex(terms, diffs, start=c.start, complete=True, algebra=c.algebra), proj


# ---------------------------------------------------------------------------
# complexes of vector spaces


@dataclass
class VSComplex:
    """Cochain complex of F_p-vector spaces: ``dims[i]`` and ``diffs[i]: C^i -> C^{i+1}``."""

    p: int
    dims: dict
    diffs: dict = field(default_factory=dict)

    def dim(self, i: int) -> int:
        return int(self.dims.get(i, 0))

    def d(self, i: int) -> np.ndarray:
        if i in self.diffs:
            return self.diffs[i]
        return np.zeros((self.dim(i + 1), self.dim(i)), dtype=np.int64)

    def check(self) -> None:
        for i in self.dims:
            if self.dim(i) and self.dim(i + 1) and self.dim(i + 2):
                if np.any(la.matmul(self.d(i + 1), self.d(i), self.p)):
                    raise ComplexError(f"d o d != 0 at degree {i}")


def cohomology(c: VSComplex, i: int) -> int:
    """``dim ker d_i - rank d_{i-1}``."""
    n = c.dim(i)
    if n == 0:
        return 0
    rk_out = la.rank(c.d(i), c.p) if c.dim(i + 1) else 0
    rk_in = la.rank(c.d(i - 1), c.p) if c.dim(i - 1) else 0
    return n - rk_out - rk_in


def cohomology_basis(c: VSComplex, i: int) -> np.ndarray:
    """Cocycles representing a basis of ``H^i`` (columns)."""
    p = c.p
    ker, _ = la.nullspace(c.d(i), p) if c.dim(i + 1) else (la.identity(c.dim(i)), None)
    img = c.d(i - 1) if c.dim(i - 1) else np.zeros((c.dim(i), 0), dtype=np.int64)
    img_basis, _ = la.column_basis(img, p) if img.shape[1] else (img, [])
    out = []
    eb = la.EchelonBasis(c.dim(i), p)
    for j in range(img_basis.shape[1]):
        eb.add(img_basis[:, j])
    for j in range(ker.shape[1]):
        if eb.add(ker[:, j]):
            out.append(ker[:, j])
    return np.stack(out, axis=1) if out else np.zeros((c.dim(i), 0), dtype=np.int64)


# ---------------------------------------------------------------------------
# Hom complexes


class HomCache:
    """Memoised ``hom_space`` per (source, target, shift)."""

    def __init__(self):
        self._store: dict = {}

    def get(self, m: GradedModule, n: GradedModule, s: int) -> HomSpace:
        key = (id(m), id(n), s)
        if key not in self._store:
            self._store[key] = (m, n, hom_space(m, n, s))
        return self._store[key][2]


def _overlap(m: GradedModule, n: GradedModule, s: int) -> bool:
    if m.dim == 0 or n.dim == 0:
        return False
    return bool(set(int(w) + s for w in m.weight_set) & set(n.weight_set))


@dataclass
class HomComplex:
    vs: VSComplex
    pieces: dict  # degree -> list of (k, j, HomSpace, offset)


def hom_complex(
    j: Complex,
    i: Complex,
    m: int,
    degrees: Sequence[int],
    cache: Optional[HomCache] = None,
) -> HomComplex:
    """``Hom^n = (+)_k Hom_A(J^k, I^{k+n})_m`` with ``D f = d f - (-1)^n f d``.

    Only stored terms enter; callers are responsible for certifying that
    the omitted pairs vanish.  ``degrees`` lists the total degrees needed
    (differentials out of each are assembled when the next degree is present).
    """
    cache = cache or HomCache()
    p = j.p
    shift0 = j.start - i.start  # degree of J^k is j.start + k
    pieces = {}
    dims = {}
    degs = sorted(set(degrees))
    for n in degs:
        lst = []
        off = 0
        for k in range(len(j.terms)):
            jj = k + n + shift0
            if not (0 <= jj < len(i.terms)):
                continue
            src, tgt = j.terms[k], i.terms[jj]
            if not _overlap(src, tgt, m):
                continue
            h = cache.get(src, tgt, m)
            if h.dim:
                lst.append((k, jj, h, off))
                off += h.dim
        pieces[n] = lst
        dims[n] = off
    diffs = {}
    for n in degs:
        if n + 1 not in pieces:
            continue
        tgt_lookup = {(k, jj): (h, off) for k, jj, h, off in pieces[n + 1]}
        mat = np.zeros((dims[n + 1], dims[n]), dtype=np.int64)
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        for k, jj, h, off in pieces[n]:
            maps = h.maps
            # d_I o f  in Hom(J^k, I^{jj+1})
            t = tgt_lookup.get((k, jj + 1))
            if t is not None and jj + 1 < len(i.terms):
                th, toff = t
                dI = i.diffs[jj]
                img = np.mod(np.einsum("ab,kbc->kac", dI, maps), p)
                mat[toff : toff + th.dim, off : off + h.dim] += th.coords_many(img)
            # f o d_J  in Hom(J^{k-1}, I^{jj})
            t = tgt_lookup.get((k - 1, jj))
            if t is not None and k >= 1:
                th, toff = t
                dJ = j.diffs[k - 1]
                img = np.mod(np.einsum("kab,bc->kac", maps, dJ), p)
                mat[toff : toff + th.dim, off : off + h.dim] += sign * th.coords_many(img)
        diffs[n] = np.mod(mat, p)
    vs = VSComplex(p, dims, diffs)
    vs.check()
    return HomComplex(vs, pieces)


# ---------------------------------------------------------------------------
# chain maps


def cone_cohomology(src: Complex, tgt: Complex, maps: Sequence[np.ndarray], depth: int) -> list[int]:
    """Cohomology dims of the cone of ``maps[k]: src^k -> tgt^k`` in positions ``-1 .. depth-2``.

    Cone position ``n`` is ``src^{n+1} (+) tgt^n`` with ``d = [[-d_src, 0], [f, d_tgt]]``.
    """
    p = tgt.p
    src.extend_to(depth)
    tgt.extend_to(depth)

    def f(k):
        if 0 <= k < len(maps):
            return np.asarray(maps[k], dtype=np.int64)
        return np.zeros((tgt.term(k).dim, src.term(k).dim), dtype=np.int64)

    def cone_d(n):
        a1, a2 = src.term(n + 1).dim, tgt.term(n).dim
        b1, b2 = src.term(n + 2).dim, tgt.term(n + 1).dim
        mat = np.zeros((b1 + b2, a1 + a2), dtype=np.int64)
        mat[:b1, :a1] = -src.diff(n + 1)
        mat[b1:, :a1] = f(n + 1)
        mat[b1:, a1:] = tgt.diff(n)
        return np.mod(mat, p)

    dims = {}
    diffs = {}
    for n in range(-2, depth):
        dims[n] = src.term(n + 1).dim + tgt.term(n).dim
    for n in range(-2, depth - 1):
        diffs[n] = cone_d(n)
    vs = VSComplex(p, dims, diffs)
    vs.check()
    return [cohomology(vs, n) for n in range(-1, depth - 1)]


def quasi_iso_check(src: Complex, tgt: Complex, maps: Sequence[np.ndarray], depth: int) -> bool:
    """Acyclicity of the cone below ``depth - 1`` (positions relative to ``start``)."""
    if not tgt.complete and not tgt.extender and len(tgt.terms) < depth:
        raise Inconclusive("target prefix too short", depth)
    return all(h == 0 for h in cone_cohomology(src, tgt, maps, depth))


def augmentation_is_qiso(m: GradedModule, res: Complex, aug: np.ndarray, depth: int) -> bool:
    return quasi_iso_check(module_complex(m), res, [aug], depth)
