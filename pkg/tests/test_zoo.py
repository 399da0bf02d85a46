import numpy as np
import pytest

from sinfty import zoo
from sinfty.galg import AlgebraError, check_semisimple, check_self_injective, radical, verify_axioms


@pytest.mark.parametrize("p,dim,rad", [(2, 8, 3), (3, 27, 13)])
def test_restricted_sl2_shape(p, dim, rad):
    a = zoo.restricted_sl2(p)
    assert a.dim == dim
    # dim A - rad = sum of squares of simple dimensions 1..p
    assert radical(a).shape[1] == rad == dim - sum(d * d for d in range(1, p + 1))
    assert check_semisimple(a.sub("a0"))


def test_quantum_sl2(uq37):
    assert uq37.dim == 27
    assert radical(uq37).shape[1] == 13
    assert verify_axioms(uq37).failure is None


def test_quantum_needs_root_of_unity():
    with pytest.raises(ValueError, match="order 3"):
        zoo.small_quantum_sl2(3, 5)
    with pytest.raises(ValueError, match="odd"):
        zoo.small_quantum_sl2(4, 5)


def test_taft_borel():
    b = zoo.taft_borel(3, 7)
    assert b.dim == 9
    assert radical(b).shape[1] == 6
    assert check_self_injective(b)[0]
    assert sorted(set(b.degrees.tolist())) == [0, 1, 2]


def test_positive_parts_self_injective(sl2_3):
    assert check_self_injective(sl2_3.sub("ge"))[0]
    assert check_self_injective(sl2_3.sub("le"))[0]


def test_baby_verma_weights(sl2_3):
    v = zoo.baby_verma(sl2_3, 1, weight=2)
    assert sorted(v.weights.tolist()) == [0, 1, 2]
    assert v.label == "M(1)"


def test_trivial(sl2_3):
    k = zoo.trivial_module(sl2_3)
    assert k.dim == 1 and k.weights.tolist() == [0]


@pytest.mark.parametrize("kind", ["cyclic", "quotient", "dual", "sum"])
def test_random_module_kinds(sl2_3, kind):
    m = zoo.random_module(sl2_3.sub("ge"), 7, max_dim=9, kind=kind)
    m.check()
    assert 0 < m.dim and m.label == f"rand-{kind}"


def test_build_dispatch():
    a = zoo.build(zoo.ZooSpec("restricted-sl2", 2))
    assert a.dim == 8
    with pytest.raises(ValueError):
        zoo.build(zoo.ZooSpec("nope", 2))
