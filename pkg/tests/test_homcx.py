import numpy as np
import pytest

from sinfty import zoo
from sinfty.gmod import zero_module
from sinfty.homcx import (
    Complex,
    ComplexError,
    HomCache,
    Inconclusive,
    VSComplex,
    augmentation_is_qiso,
    cohomology,
    cohomology_basis,
    hom_complex,
    is_concave,
    is_convex,
    module_complex,
    quasi_iso_check,
    stupid_truncation,
)
from sinfty.gmod import hom_space
from sinfty.resolve import concave_resolution, convex_resolution

CONVEX_DIMS_P3 = [3, 6, 12, 15, 21, 24]


def test_finite_and_zero_complexes_are_convex_and_concave(sl2_3):
    k = zoo.trivial_module(sl2_3)
    for c in (module_complex(k), Complex([zero_module(sl2_3)], [])):
        assert is_convex(c)[0] and is_concave(c)[0]


def test_concave_resolution_not_convex(sl2_3):
    c, _ = concave_resolution(zoo.trivial_module(sl2_3), 4)
    assert is_concave(c)[0]
    assert not is_convex(c)[0]


def test_open_complex_without_rule_is_inconclusive(sl2_3):
    c, _ = concave_resolution(zoo.trivial_module(sl2_3), 2)
    bare = Complex(c.terms, c.diffs, complete=False)
    with pytest.raises(Inconclusive):
        is_convex(bare)


def test_bad_differential_rejected(sl2_3):
    v = zoo.baby_verma(sl2_3)
    d = np.ones((v.dim, v.dim), dtype=np.int64)
    with pytest.raises(ComplexError):
        Complex([v, v], [d])


def test_stupid_truncation(sl2_3):
    c, _ = convex_resolution(zoo.trivial_module(sl2_3), 6)
    assert c.dims()[:6] == CONVEX_DIMS_P3
    t0, _ = stupid_truncation(c, 0)
    assert t0.terms == []
    for n in range(1, 5):
        a, _ = stupid_truncation(c, n)
        b, _ = stupid_truncation(c, n + 1)
        assert len(b.terms) == len(a.terms) + 1 and b.terms[-1].dim == CONVEX_DIMS_P3[n]
    k = module_complex(zoo.trivial_module(sl2_3))
    assert stupid_truncation(k, 5)[0].dims() == [1]


def test_cohomology_small_cases():
    zero_map = VSComplex(3, {0: 1, 1: 1}, {0: np.zeros((1, 1), dtype=np.int64)})
    assert cohomology(zero_map, 0) == cohomology(zero_map, 1) == 1
    exact = VSComplex(3, {0: 1, 1: 1}, {0: np.ones((1, 1), dtype=np.int64)})
    assert cohomology(exact, 0) == cohomology(exact, 1) == 0
    free = VSComplex(5, {0: 3})
    assert cohomology(free, 0) == 3 and cohomology_basis(free, 0).shape == (3, 3)


def test_hom_complex_single_term(sl2_3):
    v = zoo.baby_verma(sl2_3)
    c = module_complex(v)
    hc = hom_complex(c, c, 0, [0], HomCache())
    assert hc.vs.dim(0) == hom_space(v, v, 0).dim
    assert cohomology(hc.vs, 0) == hom_space(v, v, 0).dim


def test_quasi_iso_examples(sl2_3):
    k = zoo.trivial_module(sl2_3)
    c = module_complex(k)
    assert quasi_iso_check(c, c, [np.eye(1, dtype=np.int64)], 3)
    zero = Complex([zero_module(sl2_3)], [])
    assert not quasi_iso_check(c, zero, [np.zeros((0, 1), dtype=np.int64)], 3)
    res, aug = concave_resolution(k, 6)
    assert augmentation_is_qiso(k, res, aug, 6)
