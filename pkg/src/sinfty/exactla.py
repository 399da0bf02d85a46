"""Exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``.
Every function is pure: inputs are copied, never modified.

Small systems are eliminated with a vectorised numpy routine; above
``FLINT_THRESHOLD`` entries the elimination is handed to FLINT's
``nmod_mat`` which is much faster for the large equivariance systems built
by the module code.  Both back ends return the same reduced row echelon
form (it is unique), which the test suite checks.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

try:  # pragma: no cover - import guard
    import flint

    HAVE_FLINT = True
except ImportError:  # pragma: no cover
    flint = None
    HAVE_FLINT = False

FLINT_THRESHOLD = 60_000
_BACKEND = "auto"


class NotABasisError(ValueError):
    pass


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


def set_backend(name: str) -> None:
    """Force the elimination back end: ``"auto"``, ``"numpy"`` or ``"flint"``."""
    global _BACKEND
    if name not in ("auto", "numpy", "flint"):
        raise ValueError(name)
    if name == "flint" and not HAVE_FLINT:
        raise RuntimeError("python-flint is not installed")
    _BACKEND = name


def as_mat(a, p: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    return np.mod(arr, p)


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p.

    Uses float64 BLAS when every partial sum is exactly representable,
    otherwise falls back to int64 (object arithmetic is never needed for the
    small primes used here).
    """
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    k = a.shape[1]
    if k * (p - 1) ** 2 < 2**52:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(out, p).astype(np.int64)
    return np.mod(np.asarray(a, np.int64) @ np.asarray(b, np.int64), p)


def _rref_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.mod(np.array(a, dtype=np.int64), p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r, c:] = (a[r, c:] * inv_scalar(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))] - np.outer(col[hit], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return a[:r].copy(), pivots


def _rref_flint(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    m = flint.nmod_mat(rows, cols, np.mod(a, p).ravel().tolist(), p)
    red, rank = m.rref()
    if rank == 0:
        return np.zeros((0, cols), dtype=np.int64), []
    flat = np.fromiter((int(x) for x in red.entries()), dtype=np.int64, count=rows * cols)
    red_np = flat.reshape(rows, cols)[:rank]
    pivots = [int(np.flatnonzero(row)[0]) for row in red_np]
    return red_np, pivots


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form.  Returns the nonzero rows and pivot columns."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if a.size == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    use_flint = _BACKEND == "flint" or (
        _BACKEND == "auto" and HAVE_FLINT and a.size > FLINT_THRESHOLD
    )
    if use_flint:
        return _rref_flint(a, p)
    return _rref_numpy(a, p)


def rank(a, p: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if _BACKEND != "numpy" and HAVE_FLINT and (_BACKEND == "flint" or a.size > FLINT_THRESHOLD):
        rows, cols = a.shape
        return int(flint.nmod_mat(rows, cols, np.mod(a, p).ravel().tolist(), p).rank())
    return len(rref(a, p)[1])


def _kernel_from_rref(red: np.ndarray, pivots: Sequence[int], cols: int) -> tuple[np.ndarray, list[int]]:
    piv = set(pivots)
    free = [c for c in range(cols) if c not in piv]
    ker = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        ker[f, j] = 1
    if free and pivots:
        ker[np.asarray(pivots), :] = -red[:, free]
    return ker, free


def nullspace(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Kernel basis as columns, plus the free coordinates.

    The basis is normalised so that column ``j`` has a 1 in row ``free[j]``
    and 0 in every other free row; the coordinates of any kernel vector are
    therefore its entries at ``free``.
    """
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return identity(cols), list(range(cols))
    red, pivots = rref(a, p)
    ker, free = _kernel_from_rref(red, pivots, cols)
    return np.mod(ker, p), free


def rank_nullspace(a, p: int) -> tuple[int, np.ndarray]:
    a = np.asarray(a, dtype=np.int64)
    ker, _ = nullspace(a, p)
    return a.shape[1] - ker.shape[1], ker


def solve(a, b, p: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``a @ x = b`` or ``None`` when ``b`` is not in the image.

    ``b`` may be a vector or a matrix of right-hand sides (all must be
    consistent).
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    rows, cols = a.shape
    if rows != b.shape[0]:
        raise ValueError("dimension mismatch")
    if rows == 0:
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    red, pivots = rref(np.hstack([a, b]), p)
    if pivots and pivots[-1] >= cols:
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    if pivots:
        x[np.asarray(pivots)] = red[:, cols:]
    x = np.mod(x, p)
    return x[:, 0] if vec else x


def row_basis(vectors, p: int) -> tuple[np.ndarray, list[int]]:
    """Echelon basis (as rows) of the span of the given row vectors."""
    return rref(vectors, p)


def column_basis(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Basis of the column space in reduced form.

    Returns ``(B, piv)`` where ``B[piv] = I`` so that coordinates of any
    vector ``v`` in the span are ``v[piv]``.
    """
    a = np.asarray(a, dtype=np.int64)
    red, pivots = rref(a.T, p)
    return red.T.copy(), pivots


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(a, identity(n), p)
    if x is None or rank(a, p) != n:
        raise ZeroDivisionError("matrix is singular")
    return x


def complement_basis(dim: int, sub, p: int) -> np.ndarray:
    """Columns of the identity completing ``sub`` (columns) to a basis."""
    sub = np.asarray(sub, dtype=np.int64).reshape(dim, -1)
    red, pivots = rref(sub.T, p) if sub.shape[1] else (None, [])
    rest = [i for i in range(dim) if i not in set(pivots)]
    return identity(dim)[:, rest]


def quotient_basis(v_dim: int, w_basis, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``V -> V/W`` and a section ``V/W -> V``.

    ``w_basis`` holds the basis of ``W`` as columns.  The quotient is
    identified with the span of the standard basis vectors at non-pivot
    rows of the echelon form of ``W``.
    """
    w = np.asarray(w_basis, dtype=np.int64).reshape(v_dim, -1)
    k = w.shape[1]
    if k:
        red, pivots = rref(w.T, p)
        if len(pivots) != k:
            raise NotABasisError("not a basis: columns of W are dependent")
    else:
        red, pivots = np.zeros((0, v_dim), dtype=np.int64), []
    free = [i for i in range(v_dim) if i not in set(pivots)]
    section = identity(v_dim)[:, free]
    # v = sum_i c_i w_i + sum_f d_f e_f ; projection reads off d.
    proj = identity(v_dim)[free, :].copy()
    if pivots:
        # subtract the W-component: coordinates along echelon rows equal v[pivots]
        proj = np.mod(proj - red[:, free].T @ identity(v_dim)[pivots, :], p)
    return np.mod(proj, p), section


def intersect(a, b, p: int) -> np.ndarray:
    """Basis (columns) of the intersection of two column spans."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    ker, _ = nullspace(np.hstack([a, -b]), p)
    vecs = matmul(a, ker[: a.shape[1]], p)
    basis, _ = column_basis(vecs, p)
    return basis


def block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i : i + m.shape[0], j : j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


class EchelonBasis:
    """Incrementally grown subspace of F_p^n kept in reduced row echelon form."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if self.pivots:
            coeff = v[self.pivots]
            v = np.mod(v - coeff @ self.rows, self.p)
        return v

    def add(self, v) -> bool:
        """Add ``v``; returns ``False`` if it was already in the span."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = (r * inv_scalar(r[c], self.p)) % self.p
        if self.pivots:
            col = self.rows[:, c].copy()
            self.rows = np.mod(self.rows - np.outer(col, r), self.p)
        order = np.searchsorted(self.pivots, c)
        self.rows = np.insert(self.rows, order, r, axis=0)
        self.pivots.insert(int(order), c)
        return True

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def coords(self, v) -> np.ndarray:
        """Coordinates of a vector of the span with respect to ``rows``."""
        return np.mod(np.asarray(v, dtype=np.int64)[self.pivots], self.p)


def tensordot(a, b, axes, p: int) -> np.ndarray:
    """``np.tensordot`` reduced mod p, through float64 BLAS when exact."""
    a = np.asarray(a)
    b = np.asarray(b)
    if isinstance(axes, int):
        k = int(np.prod(a.shape[a.ndim - axes :])) if axes else 1
    else:
        k = int(np.prod([a.shape[i] for i in np.atleast_1d(axes[0])]))
    if k * (p - 1) ** 2 < 2**52:
        out = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes=axes)
        return np.mod(out, p).astype(np.int64)
    return np.mod(np.tensordot(a.astype(np.int64), b.astype(np.int64), axes=axes), p)
