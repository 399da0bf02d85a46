import json

import numpy as np
import pytest

from sinfty import exactla as la
from sinfty import zoo
from sinfty.gmod import (
    GradedModule,
    ModuleError,
    check_dual,
    coinduce,
    coregular,
    direct_sum,
    dual,
    hom_space,
    hom_total,
    induce,
    regular_module,
    resind_map,
    restrict,
    s_zero,
    shift,
    tensor_over_A,
)
from sinfty.resolve import injectivity_test


def _res(a, name, m):
    return restrict(m, a.sub(name))


def test_trivial_and_verma_dims(sl2_3, uq37):
    for a, n in ((sl2_3, 3), (uq37, 3)):
        assert zoo.trivial_module(a).dim == 1
        v = zoo.baby_verma(a)
        assert v.dim == a.dim // a.sub("ge").dim == n
        assert sorted(v.weight_set) == [-2, -1, 0]


def test_module_axioms_checked(sl2_3):
    k = zoo.trivial_module(sl2_3)
    bad = {g: np.ones((1, 1), dtype=np.int64) for g in sl2_3.generators}
    with pytest.raises(ModuleError):
        GradedModule(sl2_3, [0], bad, check=True)
    k.check()


def test_restrict_regular_is_identity(sl2_3):
    reg = regular_module(sl2_3)
    r = restrict(reg, sl2_3)
    assert r.dim == reg.dim and all(np.array_equal(r.act(g), reg.act(g)) for g in sl2_3.generators)


def test_coinduce_ge_trivial(sl2_3, uq37):
    for a in (sl2_3, uq37):
        ci = coinduce(a.sub("ge"), _res(a, "ge", zoo.trivial_module(a)))
        assert ci.dim == 3 and sorted(ci.weight_set) == [0, 1, 2]
        assert sorted(restrict(ci, a.sub("le")).weight_set) == [0, 1, 2]
        assert injectivity_test(ci, a.sub("le"))


def test_coinduce_over_whole_algebra_is_identity(sl2_2):
    k = zoo.trivial_module(sl2_2)
    ci = coinduce(sl2_2, k)
    assert ci.dim == 1 and ci.weights.tolist() == [0]


def test_induce_le_trivial(sl2_3):
    ind = induce(sl2_3.sub("le"), _res(sl2_3, "le", zoo.trivial_module(sl2_3)))
    assert ind.dim == 3 and sorted(ind.weight_set) == [0, 1, 2]


@pytest.mark.parametrize("name", ["ge", "le", "a0"])
def test_induce_dimension_formula(sl2_2, name):
    b = sl2_2.sub(name)
    m = zoo.random_module(b, 3, 6)
    assert induce(b, m).dim * b.dim == m.dim * sl2_2.dim


def test_coregular(sl2_3):
    left, right = coregular(sl2_3)
    assert left.dim == sl2_3.dim == right.dim
    left.check()
    right.check()
    assert injectivity_test(left, sl2_3.sub("ge"))
    # the dual of the right module A* is the regular left module
    back = dual(right)
    reg = regular_module(sl2_3)
    assert all(np.array_equal(back.act(g), reg.act(g)) for g in sl2_3.generators)


def test_check_dual(sl2_3):
    k = zoo.trivial_module(sl2_3)
    kd = check_dual(k)
    assert kd.dim == 1 and kd.side == "right"
    v = zoo.baby_verma(sl2_3)
    assert sorted(check_dual(v).weights.tolist()) == sorted((-v.weights).tolist())
    rng = np.random.default_rng(0)
    for _ in range(10):
        m = zoo.random_module(sl2_3, rng, 9)
        assert check_dual(m).dim == m.dim


def test_s_zero(sl2_3):
    left, _ = coregular(sl2_3)
    s = s_zero(left)
    assert s.dim == sl2_3.dim
    n0 = _res(sl2_3, "ge", zoo.trivial_module(sl2_3))
    ci = coinduce(sl2_3.sub("ge"), n0)
    assert s_zero(ci).dim == ci.dim == n0.dim * sl2_3.sub("le").dim // sl2_3.sub("a0").dim


def test_hom_space_examples(sl2_3):
    k = zoo.trivial_module(sl2_3)
    assert hom_space(k, k, 0).dim == 1
    v = zoo.baby_verma(sl2_3)
    assert hom_space(v, k, 0).dim == 1
    h = hom_space(v, v, 0)
    ident = np.eye(v.dim, dtype=np.int64)
    c = h.coords(ident)
    assert np.array_equal(np.mod(np.tensordot(c, h.maps, axes=(0, 0)), 3), ident)


def test_hom_total_regular_to_trivial(sl2_3):
    k = zoo.trivial_module(sl2_3)
    total = sum(h.dim for h in hom_total(regular_module(sl2_3), k).values())
    assert total == 1


def test_tensor_identities(sl2_3):
    _, right = coregular(sl2_3)
    areg_r = regular_module(sl2_3.opposite())
    v = zoo.baby_verma(sl2_3)
    assert tensor_over_A(areg_r, v).dim == v.dim
    vd = dual(v)
    assert tensor_over_A(vd, regular_module(sl2_3)).dim == v.dim


def test_tensor_equals_hom_isomom(sl2_3):
    le, ge = sl2_3.sub("le"), sl2_3.sub("ge")
    k = zoo.trivial_module(sl2_3)
    m = coinduce(le, restrict(k, le))
    n = coinduce(ge, restrict(k, ge))
    lhs = tensor_over_A(dual(m), s_zero(n)).dim
    rhs = sum(h.dim for h in hom_total(m, n).values())
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(3))
def test_resind_is_isomorphism(sl2_3, seed):
    m = zoo.random_module(sl2_3.sub("ge"), seed, 8)
    src, tgt, mat = resind_map(m)
    assert src.dim == tgt.dim and la.rank(mat, 3) == src.dim


def test_module_json_roundtrip(sl2_3):
    v = zoo.baby_verma(sl2_3)
    data = json.loads(json.dumps(v.to_dict("alg.json")))
    assert set(data) == {"algebra", "side", "weights", "action"}
    back = GradedModule.from_dict(data, sl2_3)
    assert back.is_isomorphic_data(v)


def test_shift_and_sum(sl2_2):
    k = zoo.trivial_module(sl2_2)
    s = direct_sum([k, shift(k, 2)], sl2_2)
    assert sorted(s.weights.tolist()) == [-2, 0]
