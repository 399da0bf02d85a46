from fractions import Fraction

import pytest

from conftest import dual_numbers, trivial_of
from sinfty import zoo
from sinfty.gmod import regular_module
from sinfty.oracle import (
    OracleError,
    Regrading,
    affine_regrading,
    brute_small,
    ext_dual_route,
    local_cohomology_cone,
    nilpotent_cone,
)
from sinfty.sinf import ext


def test_bar_dual_numbers():
    k = trivial_of(dual_numbers())
    t = brute_small(k, k, (0, 1, 2), range(-3, 4))
    assert t.nonzero() == {(0, 0): 1, (1, -1): 1, (2, -2): 1}


@pytest.mark.parametrize("pair", [("k", "k"), ("M", "k"), ("k", "M")])
def test_bar_matches_projective_route(sl2_2, pair):
    mods = {"k": zoo.trivial_module(sl2_2), "M": zoo.baby_verma(sl2_2, 0)}
    x, y = mods[pair[0]], mods[pair[1]]
    b = brute_small(x, y, (0, 1, 2), range(-4, 5))
    e = ext(x, y, (0, 1, 2), range(-4, 5))
    assert b.agrees_with(e)


def test_bar_projective_source(sl2_2):
    t = brute_small(regular_module(sl2_2), zoo.trivial_module(sl2_2), (1, 2), range(-4, 5))
    assert t.nonzero() == {}


def test_bar_refuses_large(sl2_3):
    k = zoo.trivial_module(sl2_3)
    with pytest.raises(OracleError):
        brute_small(k, k)


@pytest.mark.parametrize("which", ["dual", "sl2_2", "verma3"])
def test_dual_route(which, sl2_2, sl2_3):
    if which == "dual":
        k = trivial_of(dual_numbers())
        x = y = k
    elif which == "sl2_2":
        x = y = zoo.trivial_module(sl2_2)
    else:
        x, y = zoo.baby_verma(sl2_3, 0), zoo.trivial_module(sl2_3)
    r = ext_dual_route(x, y, range(4), range(-8, 9))
    assert r.agree, r.mismatches


def test_cone_ring():
    ring = nilpotent_cone(3)
    # O(N) in polynomial degree 1 is the adjoint: weights -2, 0, 2
    assert [ring.dim(1, w) for w in (-2, 0, 2)] == [1, 1, 1]
    # degree 2 is the 5-dimensional irreducible: one relation among h^2 and ef
    assert [ring.dim(2, w) for w in (-4, -2, 0, 2, 4)] == [1, 1, 1, 1, 1]
    with pytest.raises(Exception):
        nilpotent_cone(2)


@pytest.mark.parametrize("p", [3, 5])
def test_local_cohomology_goldens(p):
    lc = local_cohomology_cone(range(-6, 7), p=p)
    assert not lc.inconclusive and lc.edge_clear()
    h1 = lc.by_weight(1)
    assert {w: v for w, v in h1.items() if v} == {2: 2, 4: 4, 6: 6}
    assert not any(lc.by_weight(0).values()) and not any(lc.by_weight(2).values())
    # weight 2s lives in polynomial degrees -s .. s-1
    for s in (1, 2, 3):
        assert sorted(d for (d, w) in lc.table(1) if w == 2 * s) == list(range(-s, s))


def test_local_cohomology_stable():
    a = local_cohomology_cone(range(-4, 5), cover=("h", "f"))
    b = local_cohomology_cone(range(-4, 5), cover=("f", "h"))
    c = local_cohomology_cone(range(-6, 7))
    assert a.by_weight(1) == b.by_weight(1)
    assert all(c.by_weight(1)[w] == v for w, v in a.by_weight(1).items())
    d = a.to_dict()
    assert d["H"]["1"]["2"] == 2 and d["p"] == 3


def test_regrading_roundtrip():
    r = Regrading(((Fraction(-1, 2), Fraction(0)), (Fraction(0), Fraction(2, 3))), (Fraction(-1, 2), Fraction(0)), 0, 0)
    assert r.apply(1, 3) == (-1, 2)
    assert r.apply(0, 3) is None
    assert r.inverse().apply(-1, 2) == (1, 3)
    assert "entries" in r.describe()


def test_affine_regrading_recovers_map():
    r = Regrading(((Fraction(-1, 2), Fraction(0)), (Fraction(0), Fraction(2, 3))), (Fraction(-1, 2), Fraction(0)), 0, 0)
    source = {(i, m): int(i % 2 == 1 and m % 3 == 0 and m > 0) for i in range(-3, 4) for m in range(-6, 10)}
    target = {r.apply(*k): 1 for k, v in source.items() if v}
    dom = {r.apply(*k) for k in source if r.apply(*k) is not None}
    found = affine_regrading(source, target, dom)
    assert found is not None
    assert all(found.apply(*k) == r.apply(*k) for k, v in source.items() if v)
