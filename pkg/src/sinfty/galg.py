"""Finite-dimensional Z-graded algebras with triangular data.

An algebra is stored through its dense structure tensor ``mult`` with
``mult[i, j, k]`` the coefficient of ``a_k`` in ``a_i * a_j``.  Besides the
constructors and JSON round trip this module carries the verifiers for the
three standing assumptions (triangular decomposition, semisimple degree-zero
part, self-injective non-negative part), the Jacobson radical and primitive
idempotents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import exactla as la
from .exactla import EchelonBasis


class AlgebraError(ValueError):
    """Invalid algebra data.  ``reason`` is a machine-readable code."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class UnsupportedSemisimpleType(AlgebraError):
    def __init__(self, message: str):
        super().__init__("unsupported semisimple type", message)


@dataclass(frozen=True)
class TriangularData:
    a0: tuple[int, ...]
    ge: tuple[int, ...]
    le: tuple[int, ...]

    def __post_init__(self):
        for name in ("a0", "ge", "le"):
            object.__setattr__(self, name, tuple(sorted(int(i) for i in getattr(self, name))))

    def indices(self, name: str) -> tuple[int, ...]:
        return getattr(self, name)


class GradedAlgebra:
    """A Z-graded unital associative algebra over F_p with a homogeneous basis."""

    def __init__(
        self,
        p: int,
        names: Sequence[str],
        degrees: Sequence[int],
        mult: np.ndarray,
        unit,
        tri: Optional[TriangularData] = None,
        label: str = "",
        generators: Optional[Sequence[int]] = None,
        parent: Optional["GradedAlgebra"] = None,
        embedding: Optional[Sequence[int]] = None,
    ):
        self.p = la.check_prime(p)
        self.names = list(names)
        self.degrees = np.asarray(degrees, dtype=np.int64)
        self.mult = np.mod(np.asarray(mult, dtype=np.int64), self.p)
        self.unit = np.mod(np.asarray(unit, dtype=np.int64), self.p)
        self.tri = tri
        self.label = label
        self.parent = parent
        self.embedding = None if embedding is None else tuple(int(i) for i in embedding)
        self._given_generators = None if generators is None else list(generators)
        self._subs: dict[str, GradedAlgebra] = {}
        n = len(self.names)
        if self.mult.shape != (n, n, n) or self.unit.shape != (n,) or self.degrees.shape != (n,):
            raise AlgebraError("shape", "structure constants do not match the basis")

    # ------------------------------------------------------------------ basics
    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.label or 'anonymous'}, dim={self.dim}, p={self.p})"

    @cached_property
    def key(self) -> tuple:
        return (self.p, self.degrees.tobytes(), self.mult.tobytes(), self.unit.tobytes())

    def same_as(self, other: "GradedAlgebra") -> bool:
        return self is other or self.key == other.key

    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return la.tensordot(la.tensordot(x, self.mult, 1, self.p), y, ([0], [0]), self.p)

    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of ``x -> a_i x``."""
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    @cached_property
    def right_mult(self) -> np.ndarray:
        """``right_mult[j]`` is the matrix of ``x -> x a_j``."""
        return np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))

    def left_matrix(self, x) -> np.ndarray:
        return la.tensordot(np.asarray(x, dtype=np.int64), self.left_mult, 1, self.p)

    def right_matrix(self, x) -> np.ndarray:
        return la.tensordot(np.asarray(x, dtype=np.int64), self.right_mult, 1, self.p)

    def degree_indices(self, d: int) -> np.ndarray:
        return np.flatnonzero(self.degrees == d)

    @cached_property
    def degree_set(self) -> list[int]:
        return sorted(set(int(d) for d in self.degrees))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mult, np.transpose(self.mult, (1, 0, 2))))

    # ------------------------------------------------------------- validation
    def validate(self, full: bool = False) -> None:
        """Raise :class:`AlgebraError` naming the first violated axiom."""
        n, p = self.dim, self.p
        nz = np.argwhere(self.mult != 0)
        if nz.size:
            bad = self.degrees[nz[:, 2]] != self.degrees[nz[:, 0]] + self.degrees[nz[:, 1]]
            if np.any(bad):
                i, j, k = nz[np.argmax(bad)]
                raise AlgebraError(
                    "degree", f"{self.names[i]}*{self.names[j]} has a component on {self.names[k]}"
                )
        L = self.left_matrix(self.unit)
        R = self.right_matrix(self.unit)
        eye = la.identity(n)
        if not (np.array_equal(L, eye) and np.array_equal(R, eye)):
            raise AlgebraError("unit", "unit vector does not act as the identity")
        self._check_associativity(full)

    def _check_associativity(self, full: bool = False) -> None:
        """Check ``(a_i a_j) a_k = a_i (a_j a_k)``.

        By default only for ``a_i`` a generator: the set of ``x`` associating
        with everything contains the unit, is a subspace and is closed under
        left multiplication by such ``a_i``, so it is the whole algebra.
        """
        n, p = self.dim, self.p
        flat = self.mult.reshape(n * n, n).astype(np.float64)
        big = self.mult.reshape(n, n * n).astype(np.float64)
        exact = n * (p - 1) ** 2 < 2**52
        rows = range(n) if full else self._associativity_rows()
        for i in rows:
            ci = self.mult[i].astype(np.float64)  # (j, l)
            # (a_i a_j) a_k = sum_l C[i,j,l] C[l,k,:]
            lhs = ci @ big
            # a_i (a_j a_k) = sum_l C[j,k,l] C[i,l,:]
            rhs = flat @ ci
            if exact:
                lhs = np.mod(lhs, p)
                rhs = np.mod(rhs, p)
            else:  # pragma: no cover - primes this large are not used
                lhs = np.mod(self.mult[i].astype(object) @ self.mult.reshape(n, n * n), p)
                rhs = np.mod(self.mult.reshape(n * n, n).astype(object) @ self.mult[i], p)
            lhs = lhs.reshape(n, n, n)
            rhs = rhs.reshape(n, n, n)
            if not np.array_equal(lhs, rhs):
                j, k, _ = np.argwhere(lhs != rhs)[0]
                raise AlgebraError(
                    "associativity",
                    f"({self.names[i]}*{self.names[j]})*{self.names[k]} != "
                    f"{self.names[i]}*({self.names[j]}*{self.names[k]})",
                )

    def _associativity_rows(self) -> list[int]:
        # generators found without assuming associativity: greedy closure
        try:
            return list(self.generators)
        except AlgebraError:
            return list(range(self.dim))

    # ----------------------------------------------------------- generators
    @cached_property
    def generators(self) -> list[int]:
        if self._given_generators is not None:
            return list(self._given_generators)
        gens: list[int] = []
        span = self._closure(gens)
        for i in range(self.dim):
            if span.dim == self.dim:
                break
            if span.contains(self.basis_vector(i)):
                continue
            gens.append(i)
            span = self._closure(gens)
        return gens

    def _closure(self, gens: Sequence[int]) -> EchelonBasis:
        span = EchelonBasis(self.dim, self.p)
        span.add(self.unit)
        frontier = [self.unit]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = self.left_mult[g] @ v % self.p
                    if span.add(w):
                        new.append(w)
            frontier = new
        return span

    @cached_property
    def words(self) -> tuple[list[tuple[int, ...]], np.ndarray]:
        """Words in the generators whose products form a basis.

        Returns ``(words, to_words)`` where ``a_k = sum_w to_words[w, k] x_w``.
        A word ``(g1, g2, ...)`` stands for the product ``g1 * g2 * ...``.
        """
        gens = self.generators
        span = EchelonBasis(self.dim, self.p)
        span.add(self.unit)
        words: list[tuple[int, ...]] = [()]
        vecs = [self.unit.copy()]
        head = 0
        while head < len(words):
            w, v = words[head], vecs[head]
            head += 1
            for g in gens:
                u = self.left_mult[g] @ v % self.p
                if span.add(u):
                    words.append((g,) + w)
                    vecs.append(u)
        if len(words) != self.dim:
            raise AlgebraError("generators", "chosen generators do not generate the algebra")
        x = np.stack(vecs, axis=1)
        return words, la.inverse(x, self.p)

    # ------------------------------------------------------------ subalgebras
    def subalgebra(self, indices: Sequence[int], label: str = "") -> "GradedAlgebra":
        idx = sorted(int(i) for i in indices)
        rest = [i for i in range(self.dim) if i not in set(idx)]
        block = self.mult[np.ix_(idx, idx, range(self.dim))]
        if rest and np.any(block[:, :, rest]):
            i, j, _ = np.argwhere(block[:, :, rest] != 0)[0]
            raise AlgebraError(
                "not a subalgebra",
                f"product {self.names[idx[i]]}*{self.names[idx[j]]} leaves the subset",
            )
        if rest and np.any(self.unit[rest]):
            raise AlgebraError("not a subalgebra", "subset does not contain the unit")
        return GradedAlgebra(
            self.p,
            [self.names[i] for i in idx],
            self.degrees[idx],
            block[:, :, idx],
            self.unit[idx],
            label=label,
            parent=self,
            embedding=idx,
        )

    def sub(self, name: str) -> "GradedAlgebra":
        """The triangular subalgebra ``"a0"``, ``"ge"`` or ``"le"`` (or ``"A"``)."""
        if name == "A":
            return self
        if name not in self._subs:
            if self.tri is None:
                raise AlgebraError("tri", "algebra carries no triangular data")
            s = self.subalgebra(self.tri.indices(name), label=f"{self.label}:{name}")
            self._subs[name] = s
            op = self.__dict__.get("_opposite")
            if op is not None:
                if name in op._subs:
                    s.__dict__["_opposite"] = op._subs[name]
                    op._subs[name].__dict__["_opposite"] = s
                else:
                    op._subs[name] = _opposite_sub(s, op)
        return self._subs[name]

    def embed(self, x) -> np.ndarray:
        """Coordinates in the parent algebra of an element of this subalgebra."""
        out = np.zeros(self.parent.dim, dtype=np.int64)
        out[list(self.embedding)] = x
        return out

    # --------------------------------------------------------------- opposite
    def opposite(self) -> "GradedAlgebra":
        if "_opposite" in self.__dict__:
            return self.__dict__["_opposite"]
        if self.parent is not None:
            parent_op = self.parent.opposite()
            if "_opposite" in self.__dict__:
                return self.__dict__["_opposite"]
            return _opposite_sub(self, parent_op)
        op = GradedAlgebra(
            self.p,
            self.names,
            self.degrees,
            np.transpose(self.mult, (1, 0, 2)),
            self.unit,
            tri=self.tri,
            label=self.label[:-3] if self.label.endswith("^op") else f"{self.label}^op",
            generators=self._given_generators,
        )
        op.__dict__["_opposite"] = self
        self.__dict__["_opposite"] = op
        for name, s in self._subs.items():
            op._subs[name] = _opposite_sub(s, op)
        return op

    # ------------------------------------------------------------------- JSON
    def to_dict(self) -> dict:
        mult = [
            [int(i), int(j), int(k), int(self.mult[i, j, k])]
            for i, j, k in np.argwhere(self.mult != 0)
        ]
        out = {
            "p": self.p,
            "basis": [{"name": n, "deg": int(d)} for n, d in zip(self.names, self.degrees)],
            "unit": [int(c) for c in self.unit],
            "mult": mult,
        }
        if self.tri is not None:
            out["tri"] = {"a0": list(self.tri.a0), "ge": list(self.tri.ge), "le": list(self.tri.le)}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict, label: str = "") -> "GradedAlgebra":
        try:
            p = int(data["p"])
            basis = data["basis"]
            names = [str(b["name"]) for b in basis]
            degrees = [int(b["deg"]) for b in basis]
            n = len(names)
            mult = np.zeros((n, n, n), dtype=np.int64)
            for entry in data["mult"]:
                i, j, k, c = (int(t) for t in entry)
                mult[i, j, k] = (mult[i, j, k] + c) % p
            unit = [int(c) for c in data["unit"]]
            tri = None
            if "tri" in data and data["tri"] is not None:
                t = data["tri"]
                tri = TriangularData(t["a0"], t["ge"], t["le"])
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise AlgebraError("parse", f"malformed algebra description ({exc!r})") from exc
        return cls(p, names, degrees, mult, unit, tri=tri, label=label)

    @classmethod
    def from_json(cls, text: str, label: str = "") -> "GradedAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraError("parse", f"line {exc.lineno}: {exc.msg}") from exc
        return cls.from_dict(data, label=label)


def _opposite_sub(sub: GradedAlgebra, parent_op: GradedAlgebra) -> GradedAlgebra:
    op = GradedAlgebra(
        sub.p,
        sub.names,
        sub.degrees,
        np.transpose(sub.mult, (1, 0, 2)),
        sub.unit,
        label=sub.label + "^op",
        parent=parent_op,
        embedding=sub.embedding,
    )
    op.__dict__["_opposite"] = sub
    sub.__dict__["_opposite"] = op
    return op


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    return a.opposite()


# ---------------------------------------------------------------------------
# algebras spanned by a subspace (corners e B e, quotients)


def span_algebra(b: GradedAlgebra, basis: np.ndarray, unit) -> tuple[GradedAlgebra, list[int]]:
    """Algebra structure on a multiplicatively closed subspace of ``b``.

    ``basis`` holds the spanning vectors as columns in reduced form (as
    returned by :func:`exactla.column_basis`); ``unit`` is the identity of
    the subspace (e.g. an idempotent for a corner algebra).
    """
    basis, piv = la.column_basis(basis, b.p)
    r = basis.shape[1]
    # products of basis vectors, coordinates read at pivots
    prod = la.tensordot(la.tensordot(basis.T, b.mult, ([1], [0]), b.p), basis, ([1], [0]), b.p)
    prod = np.transpose(prod, (0, 2, 1))  # (a, b, k)
    mult = prod[:, :, piv]
    unit_c = np.asarray(unit, dtype=np.int64)[piv]
    degs = []
    for c in range(r):
        support = np.flatnonzero(basis[:, c])
        ds = set(int(b.degrees[s]) for s in support)
        degs.append(ds.pop() if len(ds) == 1 else 0)
    alg = GradedAlgebra(b.p, [f"v{c}" for c in range(r)], degs, mult, unit_c, label=f"{b.label}:span")
    return alg, piv


# ---------------------------------------------------------------------------
# Jacobson radical


def _int_matpow_trace(m: np.ndarray, e: int, q: int) -> int:
    """Trace of ``m**e`` modulo ``q`` for an integer matrix."""
    n = m.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = np.mod(m, q)
    exact = n * (q - 1) ** 2 < 2**52
    while e:
        if e & 1:
            result = _mulmod(result, base, q, exact)
        e >>= 1
        if e:
            base = _mulmod(base, base, q, exact)
    return int(np.trace(result) % q)


def _mulmod(a, b, q, exact):
    if exact:
        return np.mod(a.astype(np.float64) @ b.astype(np.float64), q).astype(np.int64)
    return np.mod(a.astype(object) @ b.astype(object), q).astype(np.int64)  # pragma: no cover


def trace_form(b: GradedAlgebra) -> np.ndarray:
    """Gram matrix of ``(x, y) -> Tr(L_{xy})`` on the basis."""
    tr = np.array([int(np.trace(b.left_mult[k])) for k in range(b.dim)], dtype=np.int64)
    return la.tensordot(b.mult, tr, ([2], [0]), b.p)


def radical(b: GradedAlgebra) -> np.ndarray:
    """Basis (columns, reduced form) of the Jacobson radical.

    Characteristic-p safe: the ideal chain ``I_{-1} = B``,
    ``I_i = {x in I_{i-1} : g_i(x y) = 0 for all y}`` where
    ``g_i(z) = Tr(lift(L_z)^(p^i)) mod p^(i+1) / p^i`` is linear on
    ``I_{i-1}``; the chain reaches the radical at ``i = floor(log_p dim)``.
    ``i = 0`` is the classical trace-form kernel.
    """
    cached = b.__dict__.get("_radical")
    if cached is not None:
        return cached
    b.__dict__["_radical"] = out = _radical(b)
    return out


def _radical(b: GradedAlgebra) -> np.ndarray:
    n, p = b.dim, b.p
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    ideal = la.identity(n)
    piv = list(range(n))
    top = int(math.floor(math.log(n, p) + 1e-9)) if n > 1 else 0
    for i in range(top + 1):
        if ideal.shape[1] == 0:
            break
        q = p ** (i + 1)
        power = p**i
        g = np.zeros(ideal.shape[1], dtype=np.int64)
        for c in range(ideal.shape[1]):
            lz = b.left_matrix(ideal[:, c])
            t = _int_matpow_trace(lz, power, q)
            if t % power:
                raise ArithmeticError("radical: trace not divisible as expected")
            g[c] = (t // power) % p
        # products x_c * a_y for x_c in the ideal, coordinates in the ideal basis
        prod = la.tensordot(ideal.T, b.mult, ([1], [0]), p)  # (c, y, k)
        coords = prod[:, :, piv]  # (c, y, c')
        gram = la.tensordot(coords, g, ([2], [0]), p)  # (c, y)
        ker, _ = la.nullspace(gram.T, p)
        new = la.matmul(ideal, ker, p)
        ideal, piv = la.column_basis(new, p) if new.shape[1] else (new, [])
    return ideal


def check_semisimple(b: GradedAlgebra) -> bool:
    if b.dim == 0:
        return True
    if la.rank(trace_form(b), b.p) == b.dim:
        return True
    return radical(b).shape[1] == 0


# ---------------------------------------------------------------------------
# idempotents and simples


def _graded_span(b: GradedAlgebra, mat: np.ndarray) -> np.ndarray:
    """Column space of a degree-preserving operator, with a homogeneous basis."""
    cols = []
    for d in b.degree_set:
        idx = b.degree_indices(d)
        basis, _ = la.column_basis(mat[:, idx], b.p)
        if basis.shape[1]:
            cols.append(basis)
    if not cols:
        return np.zeros((b.dim, 0), dtype=np.int64)
    return np.hstack(cols)


def corner(b: GradedAlgebra, e) -> tuple[GradedAlgebra, np.ndarray]:
    """The degree-zero corner algebra ``e B_0 e``; returns it and its basis in ``b``."""
    idx = b.degree_indices(0)
    le = b.left_matrix(e)
    re = b.right_matrix(e)
    vecs = la.matmul(la.matmul(le, re, b.p), la.identity(b.dim)[:, idx], b.p)
    basis, _ = la.column_basis(vecs, b.p)
    alg, _ = span_algebra(b, basis, e)
    return alg, basis


def _is_local(alg: GradedAlgebra) -> bool:
    return alg.dim - radical(alg).shape[1] == 1


def _split_element(alg: GradedAlgebra, x: np.ndarray):
    """Nontrivial idempotent polynomial in ``x`` (coordinates in ``alg``), or None."""
    import flint

    p = alg.p
    lx = alg.left_matrix(x)
    n = alg.dim
    mp = flint.nmod_mat(n, n, lx.ravel().tolist(), p).minpoly()
    _, factors = mp.factor()
    if len(factors) < 2:
        return None
    g, k = factors[0]
    first = g**k
    rest = flint.nmod_poly([1], p)
    for h, kk in factors[1:]:
        rest *= h**kk
    # u = rest * (rest^{-1} mod first): u = 1 mod first, u = 0 mod rest
    d, s, _ = rest.xgcd(first)
    if not d.is_one():  # pragma: no cover - coprime by construction
        return None
    u = (rest * s) % mp
    coeffs = [int(c) for c in u.coeffs()]
    y = np.zeros(n, dtype=np.int64)
    for c in reversed(coeffs):
        y = np.mod(lx @ y + c * alg.unit, p)
    return y


def primitive_idempotents(b: GradedAlgebra, seed: int = 0) -> list[np.ndarray]:
    """Complete set of orthogonal primitive idempotents of degree zero.

    Assumes the semisimple quotient of ``b`` is split over F_p.  Splitting
    is done with idempotent polynomials in random elements of the current
    corner ``e B_0 e``; a corner is final once it is local.
    """
    key = ("_idems", seed)
    if key in b.__dict__:
        return [e.copy() for e in b.__dict__[key]]
    rng = np.random.default_rng(seed)
    todo = [b.unit.copy()]
    done: list[np.ndarray] = []
    while todo:
        e = todo.pop()
        alg, basis = corner(b, e)
        if _is_local(alg):
            done.append(e)
            continue
        for _ in range(400):
            x = rng.integers(0, b.p, alg.dim)
            f = _split_element(alg, x)
            if f is not None:
                fb = la.matmul(basis, f[:, None], b.p)[:, 0]
                todo.append(fb)
                todo.append(np.mod(e - fb, b.p))
                break
        else:
            raise UnsupportedSemisimpleType(
                f"could not split a corner of dimension {alg.dim}; semisimple quotient not split?"
            )
    done.sort(key=lambda v: tuple(-v))
    b.__dict__[key] = done
    return [e.copy() for e in done]


def _in_span(basis: np.ndarray, vecs: np.ndarray, p: int) -> bool:
    base = la.rank(basis, p) if basis.shape[1] else 0
    return la.rank(np.hstack([basis, vecs]), p) == base


def idempotent_classes(b: GradedAlgebra, idems: Optional[list] = None) -> list[np.ndarray]:
    """One primitive idempotent per isomorphism class of indecomposable projective."""
    if idems is None and "_idem_classes" in b.__dict__:
        return b.__dict__["_idem_classes"]
    cache = idems is None
    idems = primitive_idempotents(b) if idems is None else idems
    rad = radical(b)
    reps: list[np.ndarray] = []
    for e in idems:
        for f in reps:
            vecs = la.matmul(la.matmul(b.left_matrix(e), b.right_matrix(f), b.p), la.identity(b.dim), b.p)
            if not _in_span(rad, vecs, b.p):
                break
        else:
            reps.append(e)
    if cache:
        b.__dict__["_idem_classes"] = reps
    return reps


def simples(b: GradedAlgebra):
    """Simple left modules, restricted to the split commutative case.

    Each simple is one-dimensional and sits in weight 0.
    """
    from .gmod import GradedModule

    rad = radical(b)
    qdim = b.dim - rad.shape[1]
    # commutativity of B/rad: all commutators in rad
    comm = np.mod(b.mult - np.transpose(b.mult, (1, 0, 2)), b.p).reshape(-1, b.dim).T
    if not _in_span(rad, comm, b.p):
        raise UnsupportedSemisimpleType("B/rad(B) is not commutative")
    out = []
    seen = []
    for e in primitive_idempotents(b):
        # character: a -> scalar with a e = chi(a) e mod rad
        chi = np.zeros(b.dim, dtype=np.int64)
        piv = int(np.flatnonzero(e)[0])
        for k in range(b.dim):
            ae = b.multiply(b.basis_vector(k), e)
            diff = None
            for c in range(b.p):
                cand = np.mod(ae - c * e, b.p)
                if _in_span(rad, cand[:, None], b.p):
                    diff = c
                    break
            if diff is None:
                raise UnsupportedSemisimpleType("simple module is not one-dimensional")
            chi[k] = diff
        key = tuple(chi)
        if key in seen:
            continue
        seen.append(key)
        gens = b.generators
        action = {g: np.array([[chi[g]]], dtype=np.int64) for g in gens}
        for g in gens:
            if chi[g] and b.degrees[g] != 0:
                raise UnsupportedSemisimpleType("character nonzero in nonzero degree")
        out.append(GradedModule(b, [0], action))
    if len(out) != qdim:
        raise UnsupportedSemisimpleType(
            f"found {len(out)} characters but B/rad has dimension {qdim}"
        )
    return out


# ---------------------------------------------------------------------------
# the standing assumptions


@dataclass
class AxiomReport:
    triangular_ok: bool
    triangular_witness: dict
    semisimple_ok: bool
    radical_dim: int
    selfinjective_ok: bool
    ext1_dims: list[int] = field(default_factory=list)
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.triangular_ok and self.semisimple_ok and self.selfinjective_ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "triangular_ok": self.triangular_ok,
            "triangular_witness": self.triangular_witness,
            "semisimple_ok": self.semisimple_ok,
            "radical_dim": self.radical_dim,
            "selfinjective_ok": self.selfinjective_ok,
            "ext1_dims": self.ext1_dims,
            "failure": self.failure,
        }


def _tensor_over(a: GradedAlgebra, left: str, mid: str, right: str) -> dict:
    """Rank data for the multiplication map ``A^left (x)_{A^mid} A^right -> A``."""
    p, n = a.p, a.dim
    li = list(a.tri.indices(left))
    mi = list(a.tri.indices(mid))
    ri = list(a.tri.indices(right))
    for name in (left, mid, right):
        a.sub(name)  # raises "not a subalgebra"
    nl, nr = len(li), len(ri)
    # plain tensor basis (x, y) -> column x * nr + y
    mu = np.zeros((n, nl * nr), dtype=np.int64)
    for x, i in enumerate(li):
        mu[:, x * nr : (x + 1) * nr] = a.mult[i][ri, :].T
    mu %= p
    rel_rows = []
    for x, i in enumerate(li):
        for t in mi:
            xt = a.mult[i, t, li]  # x*t expanded in the left basis
            for y, j in enumerate(ri):
                ty = a.mult[t, j, ri]
                v = np.zeros(nl * nr, dtype=np.int64)
                v += np.kron(xt, np.eye(nr, dtype=np.int64)[y])
                v -= np.kron(np.eye(nl, dtype=np.int64)[x], ty)
                rel_rows.append(v % p)
    rel = np.array(rel_rows, dtype=np.int64).reshape(-1, nl * nr)
    rel_rank = la.rank(rel, p) if rel.size else 0
    quot_dim = nl * nr - rel_rank
    mu_rank = la.rank(mu, p)
    # relations must die under multiplication (associativity); check on the span
    killed = not np.any(la.matmul(mu, rel.T, p)) if rel.size else True
    return {
        "tensor_dim": int(nl * nr),
        "relation_rank": int(rel_rank),
        "quotient_dim": int(quot_dim),
        "image_rank": int(mu_rank),
        "algebra_dim": int(n),
        "bijective": bool(killed and quot_dim == n and mu_rank == n),
    }


def check_triangular(a: GradedAlgebra, tri: Optional[TriangularData] = None) -> tuple[bool, dict]:
    if tri is not None and tri != a.tri:
        a = GradedAlgebra(a.p, a.names, a.degrees, a.mult, a.unit, tri=tri, label=a.label)
    if a.tri is None:
        raise AlgebraError("tri", "no triangular data")
    t = a.tri
    if set(t.a0) != set(t.ge) & set(t.le):
        raise AlgebraError("triangular", "a0 is not the intersection of ge and le")
    for i in t.ge:
        if a.degrees[i] < 0:
            raise AlgebraError("triangular", f"{a.names[i]} in ge has negative degree")
    for i in t.le:
        if a.degrees[i] > 0:
            raise AlgebraError("triangular", f"{a.names[i]} in le has positive degree")
    for name in ("ge", "le"):
        zero = {i for i in t.indices(name) if a.degrees[i] == 0}
        if zero != set(t.a0):
            raise AlgebraError("triangular", f"degree-0 part of {name} differs from a0")
    ge_le = _tensor_over(a, "ge", "a0", "le")
    le_ge = _tensor_over(a, "le", "a0", "ge")
    ok = ge_le["bijective"] and le_ge["bijective"]
    return ok, {"ge_a0_le": ge_le, "le_a0_ge": le_ge}


def check_self_injective(b: GradedAlgebra) -> tuple[bool, list[int]]:
    """``Ext^1_B(S, B) = 0`` for every simple ``S`` (all weight shifts)."""
    from .gmod import regular_module
    from .resolve import ext1_total

    reg = regular_module(b)
    try:
        simple_list = simples(b)
    except UnsupportedSemisimpleType:
        from .resolve import simple_modules

        simple_list = simple_modules(b)
    dims = [ext1_total(s, reg) for s in simple_list]
    return all(d == 0 for d in dims), dims


def verify_axioms(a: GradedAlgebra) -> AxiomReport:
    """Full report on the structural assumptions; basic validation first."""
    a.validate()
    tri_ok, witness = check_triangular(a)
    a0 = a.sub("a0")
    rad_dim = int(radical(a0).shape[1])
    semi = rad_dim == 0
    si_ok, ext1 = check_self_injective(a.sub("ge"))
    failure = None
    if not tri_ok:
        failure = "triangular"
    elif not semi:
        failure = "semisimple"
    elif not si_ok:
        failure = "self-injective"
    return AxiomReport(tri_ok, witness, semi, rad_dim, si_ok, ext1, failure)
