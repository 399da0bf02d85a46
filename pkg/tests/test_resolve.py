import numpy as np
import pytest

from conftest import dual_numbers, trivial_of
from sinfty import exactla as la
from sinfty import zoo
from sinfty.gmod import coinduce, direct_sum, dual, regular_module, restrict, shift, zero_module
from sinfty.homcx import augmentation_is_qiso, is_concave, is_convex
from sinfty.resolve import (
    ResolutionError,
    a_injective_concave_resolution,
    concave_resolution,
    convex_resolution,
    coresolution_step_ge,
    fifi_filtration,
    injectivity_test,
    minimal_injective_resolution,
    minimal_projective_resolution,
    simple_modules,
)

# frozen from verified runs
PROJ_DIMS = {2: [4, 8, 12, 16, 20], 3: [6, 12, 18, 24, 30]}
EXT_KK_P3 = {(0, 0): 1, (2, -3): 1, (2, 0): 1, (2, 3): 1, (4, -6): 1, (4, -3): 1, (4, 0): 1, (4, 3): 1, (4, 6): 1}
EXT_KK_P2 = {(i, m): 1 for i in range(5) for m in range(-i, i + 1, 2)}


def _k(a):
    return zoo.trivial_module(a)


def test_coresolution_step_ge_trivial(sl2_3):
    st = coresolution_step_ge(_k(sl2_3))
    assert st.term.dim == 3 and sorted(st.term.weights.tolist()) == [0, 1, 2]
    assert st.coker.dim == 2 and sorted(st.coker.weights.tolist()) == [1, 2]


def test_coresolution_step_on_coinduced_splits(sl2_3):
    ge = sl2_3.sub("ge")
    ci = coinduce(ge, restrict(_k(sl2_3), ge))
    st = coresolution_step_ge(ci)
    assert la.rank(st.embed, 3) == ci.dim
    assert injectivity_test(st.coker, sl2_3.sub("le"))


def test_zero_module_resolutions(sl2_3):
    z = zero_module(sl2_3)
    c, _ = concave_resolution(z, 3)
    assert sum(c.dims()) == 0
    st = coresolution_step_ge(z)
    assert st.term.dim == 0


def test_concave_resolution_trivial(sl2_3):
    k = _k(sl2_3)
    for reduced in (True, False):
        c, aug = concave_resolution(k, 4, reduced=reduced)
        assert c.dims()[:2] == [3, 6]
        mins = [t.weight_range[0] for t in c.terms]
        assert mins == sorted(mins) and all(b > a for a, b in zip(mins, mins[1:]))
        assert all(injectivity_test(t, sl2_3.sub("le")) for t in c.terms)
        assert augmentation_is_qiso(k, c, aug, 4)
    naive, _ = concave_resolution(k, 4, reduced=False)
    assert naive.dims() == [3, 6, 12, 24]


def test_convex_resolution_trivial(sl2_3):
    c, aug = convex_resolution(_k(sl2_3), 6)
    assert [t.weight_range[1] for t in c.terms][:3] == [0, -1, -2]
    assert all(injectivity_test(t, sl2_3.sub("ge")) for t in c.terms)
    assert is_convex(c)[0]
    assert augmentation_is_qiso(_k(sl2_3), c, aug, 6)


def test_convex_naive_term_of_regular(sl2_3):
    c, _ = convex_resolution(regular_module(sl2_3), 1, reduced=False)
    assert c.dims()[0] == sl2_3.dim * sl2_3.dim // sl2_3.sub("le").dim


def test_injectivity_examples(sl2_3):
    ge, le = sl2_3.sub("ge"), sl2_3.sub("le")
    assert not injectivity_test(_k(sl2_3), ge)
    assert injectivity_test(regular_module(ge), ge)
    assert injectivity_test(coinduce(ge, zoo.random_module(ge, 4, 6)), le)


@pytest.mark.parametrize("p", [2, 3])
def test_minimal_projective_resolution_trivial(p):
    a = zoo.restricted_sl2(p)
    pr = minimal_projective_resolution(_k(a), 5)
    assert pr.dims() == PROJ_DIMS[p]
    assert pr.is_minimal()


def test_projective_module_resolves_in_one_step(sl2_3):
    pr = minimal_projective_resolution(regular_module(sl2_3), 3)
    assert pr.dims() == [sl2_3.dim]


def test_dual_numbers_periodic():
    k = trivial_of(dual_numbers())
    assert minimal_projective_resolution(k, 4).dims() == [2, 2, 2, 2]


def test_injective_matches_projective_of_right_module(sl2_2):
    k = _k(sl2_2)
    inj = minimal_injective_resolution(k, 5)
    proj = minimal_projective_resolution(dual(k), 5)
    assert inj.dims() == proj.dims()


def test_injective_module_has_length_zero(sl2_3):
    left = dual(regular_module(sl2_3.opposite()))
    inj = minimal_injective_resolution(left, 3)
    assert inj.dims() == [sl2_3.dim]


def test_simples_count(sl2_3, uq37):
    assert len(simple_modules(sl2_3.sub("ge"))) == 3
    assert len(simple_modules(sl2_3)) == 3
    assert len(simple_modules(uq37)) == 3


def test_a_injective_concave_resolution(sl2_3):
    le = sl2_3.sub("le")
    x = coinduce(le, restrict(_k(sl2_3), le))
    c, _ = a_injective_concave_resolution(x, 3)
    assert all(injectivity_test(t) for t in c.terms)
    with pytest.raises(ResolutionError):
        a_injective_concave_resolution(_k(sl2_3), 2)
    z, _ = a_injective_concave_resolution(zero_module(sl2_3), 2)
    assert sum(z.dims()) == 0


def test_fifi_examples(sl2_3):
    ge = sl2_3.sub("ge")
    k0 = restrict(_k(sl2_3), ge)
    one = coinduce(ge, k0)
    assert len(fifi_filtration(one)) == 1
    with pytest.raises(ResolutionError) as exc:
        fifi_filtration(_k(sl2_3))
    assert exc.value.reason == "not A<=0-injective"
    two = direct_sum([one, coinduce(ge, shift(k0, -4))], sl2_3)
    layers = fifi_filtration(two)
    assert len(layers) == 2 and layers[0].weight < layers[1].weight
