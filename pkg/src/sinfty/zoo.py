"""Example algebras: restricted sl2, small quantum sl2, Taft (Borel) algebras.

All of them are built from a presentation by generators and relations with
one generic straightening routine (:class:`Straightener`) that rewrites
words into PBW normal form.  Associativity of the resulting structure
constants is verified exhaustively afterwards rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Optional

import numpy as np

from . import exactla as la
from .galg import AlgebraError, GradedAlgebra, TriangularData

Poly = dict  # word (tuple of letters) -> coefficient


@dataclass(frozen=True)
class ZooSpec:
    family: str
    p: int
    l: Optional[int] = None
    zeta: Optional[int] = None


class Straightener:
    """Rewrite words in letters ``0 < 1 < ... < k-1`` into PBW normal form.

    ``swaps[(b, a)]`` with ``b > a`` gives the product ``b a`` as a linear
    combination of words; ``powers[x] = (n, poly)`` replaces ``x**n``.
    """

    def __init__(self, p: int, nletters: int, swaps: dict, powers: dict):
        self.p = p
        self.nletters = nletters
        self.swaps = {k: _clean(v, p) for k, v in swaps.items()}
        self.powers = {k: (n, _clean(v, p)) for k, (n, v) in powers.items()}
        self.normal = lru_cache(maxsize=None)(self._normal)

    def _normal(self, word: tuple) -> tuple:
        for pos in range(len(word) - 1):
            b, a = word[pos], word[pos + 1]
            if b > a:
                repl = self.swaps.get((b, a))
                if repl is None:
                    raise AlgebraError("relations", f"no rule to reorder letters {b},{a}")
                return self._expand(word[:pos], repl, word[pos + 2 :])
        for x, (n, repl) in self.powers.items():
            run = 0
            for pos, letter in enumerate(word):
                run = run + 1 if letter == x else 0
                if run == n:
                    start = pos - n + 1
                    return self._expand(word[:start], repl, word[pos + 1 :])
        return ((word, 1),)

    def _expand(self, pre: tuple, repl: Poly, post: tuple) -> tuple:
        acc: dict = {}
        for w, c in repl.items():
            for nw, nc in self.normal(pre + w + post):
                acc[nw] = (acc.get(nw, 0) + c * nc) % self.p
        return tuple((w, c) for w, c in acc.items() if c)


def _clean(poly: Poly, p: int) -> Poly:
    return {tuple(w): c % p for w, c in poly.items() if c % p}


def pbw_algebra(
    p: int,
    letters: list[str],
    letter_degrees: list[int],
    bounds: list[int],
    straight: Straightener,
    label: str,
    tri_rule: Optional[Callable[[tuple], str]] = None,
) -> GradedAlgebra:
    """Algebra with basis the ordered monomials ``x0^a0 x1^a1 ...``."""
    exps = list(product(*[range(b) for b in bounds]))
    words = [sum(((i,) * e for i, e in enumerate(ex)), ()) for ex in exps]
    index = {w: k for k, w in enumerate(words)}
    n = len(words)
    names = []
    for ex in exps:
        parts = [f"{letters[i]}^{e}" if e > 1 else letters[i] for i, e in enumerate(ex) if e]
        names.append("*".join(parts) if parts else "1")
    degrees = [int(sum(e * letter_degrees[i] for i, e in enumerate(ex))) for ex in exps]
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            for w, c in straight.normal(wi + wj):
                if w not in index:
                    raise AlgebraError("relations", f"normal form {w} is not a basis word")
                mult[i, j, index[w]] = c
    unit = np.zeros(n, dtype=np.int64)
    unit[index[()]] = 1
    tri = None
    if tri_rule is not None:
        a0, ge, le = [], [], []
        for k, ex in enumerate(exps):
            kind = tri_rule(ex)
            if kind in ("a0",):
                a0.append(k)
                ge.append(k)
                le.append(k)
            elif kind == "ge":
                ge.append(k)
            elif kind == "le":
                le.append(k)
        tri = TriangularData(a0, ge, le)
    gens = [index[(i,)] for i in range(len(letters)) if (i,) in index]
    return GradedAlgebra(p, names, degrees, mult, unit, tri=tri, label=label, generators=gens)


def _triangular_rule(ex: tuple) -> str:
    a, _, c = ex
    if a == 0 and c == 0:
        return "a0"
    if c == 0:
        return "ge"
    if a == 0:
        return "le"
    return "mixed"


@lru_cache(maxsize=None)
def restricted_sl2(p: int) -> GradedAlgebra:
    """Restricted enveloping algebra of sl2 over F_p, PBW basis ``e^a h^b f^c``.

    ``deg e = 1``, ``deg h = 0``, ``deg f = -1``; ``e^p = f^p = 0``, ``h^p = h``.
    """
    p = la.check_prime(p)
    E, H, F = 0, 1, 2
    swaps = {
        (H, E): {(E, H): 1, (E,): 2},  # h e = e h + 2 e
        (F, E): {(E, F): 1, (H,): -1},  # f e = e f - h
        (F, H): {(H, F): 1, (F,): 2},  # f h = h f + 2 f
    }
    powers = {E: (p, {}), F: (p, {}), H: (p, {(H,): 1})}
    st = Straightener(p, 3, swaps, powers)
    alg = pbw_algebra(p, ["e", "h", "f"], [1, 0, -1], [p, p, p], st, f"u(sl2,p={p})", _triangular_rule)
    alg.validate()
    return alg


def _check_root(l: int, p: int, zeta: Optional[int]) -> int:
    p = la.check_prime(p)
    if l < 3 or l % 2 == 0:
        raise ValueError("l must be odd and at least 3")
    if (p - 1) % l:
        raise ValueError(f"F_{p} has no element of order {l}")
    if zeta is None:
        zeta = next(z for z in range(2, p) if _order(z, p) == l)
    if _order(zeta, p) != l:
        raise ValueError(f"{zeta} does not have order {l} in F_{p}")
    return zeta


def _order(z: int, p: int) -> int:
    z %= p
    if z == 0:
        return 0
    k, x = 1, z
    while x != 1:
        x = x * z % p
        k += 1
    return k


@lru_cache(maxsize=None)
def small_quantum_sl2(l: int, p: int, zeta: Optional[int] = None) -> GradedAlgebra:
    """Small quantum group u_zeta(sl2) over F_p with ``zeta`` of order ``l``.

    Basis ``E^a K^b F^c``; ``K E = zeta^2 E K``, ``K F = zeta^-2 F K``,
    ``E F - F E = (K - K^-1)/(zeta - zeta^-1)``, ``E^l = F^l = 0``, ``K^l = 1``.
    """
    zeta = _check_root(l, p, zeta)
    E, K, F = 0, 1, 2
    z2 = zeta * zeta % p
    zinv = pow(zeta, -1, p)
    denom = pow((zeta - zinv) % p, -1, p)
    kinv = (K,) * (l - 1)
    swaps = {
        (K, E): {(E, K): z2},
        # F E = E F - (K - K^-1)/(zeta - zeta^-1)
        (F, E): {(E, F): 1, (K,): -denom, kinv: denom},
        # F K = zeta^2 K F
        (F, K): {(K, F): z2},
    }
    powers = {E: (l, {}), F: (l, {}), K: (l, {(): 1})}
    st = Straightener(p, 3, swaps, powers)
    alg = pbw_algebra(
        p, ["E", "K", "F"], [1, 0, -1], [l, l, l], st, f"u_q(sl2,l={l},p={p})", _triangular_rule
    )
    alg.validate()
    return alg


@lru_cache(maxsize=None)
def taft_borel(l: int, p: int, zeta: Optional[int] = None) -> GradedAlgebra:
    """The Borel part ``span{E^a K^b}`` as a stand-alone algebra.

    Its triangular data has trivial negative part (``le = a0``), which still
    satisfies all three standing assumptions.
    """
    zeta = _check_root(l, p, zeta)
    E, K = 0, 1
    z2 = zeta * zeta % p
    st = Straightener(p, 2, {(K, E): {(E, K): z2}}, {E: (l, {}), K: (l, {(): 1})})

    def rule(ex):
        return "a0" if ex[0] == 0 else "ge"

    alg = pbw_algebra(p, ["E", "K"], [1, 0], [l, l], st, f"b_q(l={l},p={p})", rule)
    alg.validate()
    return alg


def build(spec: ZooSpec) -> GradedAlgebra:
    if spec.family == "restricted-sl2":
        return restricted_sl2(spec.p)
    if spec.family == "small-quantum-sl2":
        return small_quantum_sl2(spec.l, spec.p, spec.zeta)
    if spec.family == "taft-borel":
        return taft_borel(spec.l, spec.p, spec.zeta)
    raise ValueError(f"unknown family {spec.family!r}")


# ---------------------------------------------------------------- modules


def trivial_module(a: GradedAlgebra):
    """One-dimensional module of weight 0 on which the augmentation acts.

    Every generator of nonzero degree acts by 0 and every degree-zero
    generator by its counit value, read off from the action on the unit of
    the quotient ``A / (A^{>0} + A^{<0})``-style augmentation: for the zoo
    presentations ``h -> 0`` and ``K -> 1``.
    """
    from .gmod import GradedModule

    action = {}
    for g in a.generators:
        name = a.names[g]
        if a.degrees[g] != 0:
            val = 0
        elif name in ("K",):
            val = 1
        else:
            val = 0
        action[g] = np.array([[val % a.p]], dtype=np.int64)
    return GradedModule(a, [0], action, check=True, label="k")


def character_module(b: GradedAlgebra, values: dict[str, int], weight: int = 0):
    """One-dimensional module given by generator values (nonzero degrees act by 0)."""
    from .gmod import GradedModule

    action = {}
    for g in b.generators:
        val = values.get(b.names[g], 0) if b.degrees[g] == 0 else 0
        action[g] = np.array([[val % b.p]], dtype=np.int64)
    return GradedModule(b, [weight], action, check=True)


def baby_verma(a: GradedAlgebra, lam: int = 0, weight: int = 0):
    """Baby Verma module ``A (x)_{A>=0} k_lam``.

    ``lam`` is the value of ``h`` (restricted sl2) or the exponent with
    ``K -> zeta^lam`` (quantum); the positive generator acts by 0.
    """
    from .gmod import induce

    ge = a.sub("ge")
    vals = {}
    for g in ge.generators:
        name = ge.names[g]
        if name == "h":
            vals["h"] = lam
        elif name == "K":
            zeta = _zeta_of(a)
            vals["K"] = pow(zeta, lam, a.p)
    chi = character_module(ge, vals, weight)
    v = induce(ge, chi)
    v.label = f"M({lam})"
    return v


def _zeta_of(a: GradedAlgebra) -> int:
    """Recover ``zeta^2`` relation data: K E = zeta^2 E K, return a square root of order l."""
    ie, ik = a.index("E"), a.index("K")
    ke = a.multiply(a.basis_vector(ik), a.basis_vector(ie))
    ek = a.multiply(a.basis_vector(ie), a.basis_vector(ik))
    j = int(np.flatnonzero(ek)[0])
    z2 = int(ke[j]) * pow(int(ek[j]), -1, a.p) % a.p
    for z in range(1, a.p):
        if z * z % a.p == z2 and _order(z, a.p) % 2 == 1:
            return z
    raise AlgebraError("zeta", "cannot recover the root of unity")


# ---------------------------------------------------------------- random panels


def random_module(b: GradedAlgebra, rng, max_dim: int = 16, kind: Optional[str] = None):
    """A small random graded ``b``-module.

    ``kind`` picks the construction: ``"cyclic"`` (``B v`` for a random
    homogeneous ``v``), ``"quotient"`` (a cyclic module modulo a random cyclic
    submodule), ``"dual"`` (dual of a cyclic right module) or ``"sum"`` of two
    smaller ones.  Every result is shifted by a random weight in ``[-2, 2]``.
    """
    from .gmod import direct_sum, dual, quotient, regular_module, shift, submodule, submodule_closure

    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    p = b.p
    reg = regular_module(b)

    def cyclic(mod):
        ws = sorted(mod.weight_set)
        for _ in range(20):
            w = int(rng.choice(ws))
            idx = mod.at(w)
            v = np.zeros((mod.dim, 1), dtype=np.int64)
            v[idx, 0] = rng.integers(0, p, len(idx))
            if not v.any():
                continue
            sub, _ = submodule(mod, v)
            if 0 < sub.dim <= max_dim:
                return sub
        return trivial_module(b)

    def quot(mod):
        if mod.dim <= 1:
            return mod
        w = int(rng.choice(sorted(mod.weight_set)))
        idx = mod.at(w)
        v = np.zeros((mod.dim, 1), dtype=np.int64)
        v[idx, 0] = rng.integers(0, p, len(idx))
        if not v.any():
            return mod
        q, _, _ = quotient(mod, submodule_closure(mod, v))
        return q

    kinds = ["cyclic", "quotient", "dual", "sum"]
    kind = kind or kinds[int(rng.integers(0, len(kinds)))]
    if kind == "cyclic":
        m = cyclic(reg)
    elif kind == "quotient":
        m = quot(cyclic(reg))
    elif kind == "dual":
        right = dual(regular_module(b.opposite()))
        m = cyclic(right)
    else:
        parts = [random_module(b, rng, max(1, max_dim // 2), kind=str(rng.choice(kinds[:3]))) for _ in range(2)]
        m = direct_sum(parts, b)
    if m.dim == 0:
        m = trivial_module(b)
    m = shift(m, int(rng.integers(-2, 3)))
    m.check()
    m.label = f"rand-{kind}"
    return m
