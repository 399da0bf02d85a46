import pytest

from conftest import dual_numbers, trivial_of
from sinfty import zoo
from sinfty.gmod import coinduce, coregular, induce, regular_module, restrict, shift, zero_module
from sinfty.sinf import (
    CertificationError,
    ExtTable,
    PreconditionError,
    check_isomom,
    ext,
    hom_through_table,
    s_derived,
    s_derived_injective,
    s_identity_iso,
    semi_infinite_ext,
    symmetrizing_form,
    tor,
)

SINF_KK_P3 = {(-3, 6), (-1, 3), (-1, 6), (1, 3), (1, 6), (3, 6)}
SINF_MK_P3 = {(-3, 6), (-1, 3)}
SINF_KM_P3 = {(-2, 3), (0, 0)}
SINF_MK_P2 = {(-3, 4), (-2, 3), (-1, 2), (0, 1)}
SINF_KM_P2 = {(-3, 3), (-2, 2), (-1, 1), (0, 0)}


def _k(a):
    return zoo.trivial_module(a)


def test_table_roundtrip():
    t = ExtTable("A", "X", "Y", "ext")
    t.set(0, 0, 1)
    t.set(1, -2, 3, certified=False)
    back = ExtTable.from_json(t.to_json())
    assert back.agrees_with(t) and back.dim(1, -2) == 3 and not back.certified(1, -2)
    rows = t.to_csv().strip().splitlines()
    assert rows[0].split(",")[:4] == ["i", "m", "dim", "certified"]
    assert len(rows) == 3
    other = ExtTable.from_dict(t.to_dict())
    other.set(0, 0, 2)
    assert other.compare(t)


def test_ext_dual_numbers():
    a = dual_numbers()
    t = ext(trivial_of(a), trivial_of(a), range(4), range(-4, 5))
    assert t.nonzero() == {(i, -i): 1 for i in range(4)}


def test_ext_of_projective_vanishes(sl2_3):
    t = ext(regular_module(sl2_3), _k(sl2_3), range(1, 3), range(-6, 7))
    assert t.nonzero() == {}


def test_tor_degree_zero_is_tensor(sl2_2):
    k = _k(sl2_2)
    from sinfty.gmod import dual

    t = tor(dual(k), k, [0, 1], range(-2, 3))
    assert t.dim(0, 0) == 1


@pytest.mark.parametrize("p,x,y,want", [
    (3, "k", "k", SINF_KK_P3),
    (3, "M", "k", SINF_MK_P3),
    (3, "k", "M", SINF_KM_P3),
    (2, "M", "k", SINF_MK_P2),
    (2, "k", "M", SINF_KM_P2),
])
def test_sinf_goldens(p, x, y, want):
    a = zoo.restricted_sl2(p)
    mods = {"k": _k(a), "M": zoo.baby_verma(a, 0)}
    t = semi_infinite_ext(mods[x], mods[y], range(-3, 4), range(-8, 9))
    assert all(t.certified(i, m) for i, m in t.keys())
    assert set(t.nonzero()) == want


def test_sinf_zero_module(sl2_3):
    t = semi_infinite_ext(zero_module(sl2_3), _k(sl2_3), range(-1, 2), range(-2, 3))
    assert t.nonzero() == {}


def test_sinf_strict_cap(sl2_3):
    with pytest.raises(CertificationError) as exc:
        semi_infinite_ext(_k(sl2_3), _k(sl2_3), [0], [40], depth_cap=3, strict=True)
    assert exc.value.binding["cap"] == 3


def test_hom_through_matches_sinf(sl2_2):
    k = _k(sl2_2)
    a = semi_infinite_ext(k, k, range(-2, 3), range(-4, 5))
    b = hom_through_table(k, k, range(-2, 3), range(-4, 5))
    assert a.agrees_with(b)


def test_reduction_to_ext(sl2_3):
    le = sl2_3.sub("le")
    x = coinduce(le, restrict(_k(sl2_3), le))
    y = _k(sl2_3)
    s = semi_infinite_ext(x, y, range(0, 4), range(-6, 7))
    e = ext(x, y, range(0, 4), range(-6, 7))
    assert s.nonzero() == e.nonzero() == {(1, 3): 1, (3, 6): 1}


def test_s_derived_of_injective(sl2_3):
    ge = sl2_3.sub("ge")
    n = coinduce(ge, restrict(_k(sl2_3), ge))
    t = s_derived(n, [1, 2])
    assert t.nonzero() == {}


def test_s_derived_coregular_gives_regular(sl2_2):
    astar, _ = coregular(sl2_2)
    t = s_derived(astar, [0, 1])
    assert sum(v for (i, _), v in t.nonzero().items() if i == 0) == sl2_2.dim
    assert not any(i == 1 for i, _ in t.nonzero())


def test_s_derived_two_ways(sl2_2):
    k = _k(sl2_2)
    a = s_derived(k, [0, 1, 2], range(-6, 7))
    b = s_derived_injective(k, [0, 1, 2], range(-6, 7))
    assert a.nonzero() == b.nonzero()


def test_isomom_on_coinduced_pair(sl2_3):
    le, ge = sl2_3.sub("le"), sl2_3.sub("ge")
    m = induce(le, restrict(_k(sl2_3), le))
    n = coinduce(ge, restrict(_k(sl2_3), ge))
    rep = check_isomom(m, shift(n, 1), degrees=(1, 2))
    assert rep.ok


def test_isomom_precondition(sl2_3):
    with pytest.raises(PreconditionError):
        check_isomom(_k(sl2_3), _k(sl2_3))


def test_s_is_identity_for_symmetric(sl2_3, uq37):
    for a in (sl2_3, uq37):
        assert symmetrizing_form(a) is not None
        assert s_identity_iso(zoo.baby_verma(a, 0)) is not None


def test_taft_not_symmetric():
    a = zoo.taft_borel(3, 7)
    assert symmetrizing_form(a) is None
