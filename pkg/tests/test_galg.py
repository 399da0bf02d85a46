import json

import numpy as np
import pytest

from conftest import a2_path_algebra, cyclic_group_algebra, dual_numbers, split_cubic
from sinfty import zoo
from sinfty.galg import (
    AlgebraError,
    GradedAlgebra,
    TriangularData,
    check_self_injective,
    check_semisimple,
    check_triangular,
    radical,
    simples,
    verify_axioms,
)


def test_radical_of_split_cubic_is_zero():
    assert radical(split_cubic()).shape[1] == 0
    assert check_semisimple(split_cubic())


def test_radical_of_dual_numbers():
    rad = radical(dual_numbers(2, 0))
    assert rad.shape[1] == 1 and rad[:, 0].tolist() == [0, 1]
    assert not check_semisimple(dual_numbers(2, 0))


def test_group_algebra_semisimple_with_three_characters():
    b = cyclic_group_algebra()
    assert check_semisimple(b)
    values = sorted(int(s.action[1][0, 0]) for s in simples(b))
    assert values == [1, 2, 4]


def test_split_cubic_simples():
    values = sorted(int(s.action[1][0, 0]) for s in simples(split_cubic()))
    assert values == [0, 1, 2]


def test_ge_radical_restricted_sl2_p3(sl2_3):
    ge = sl2_3.sub("ge")
    assert ge.dim == 9
    assert radical(ge).shape[1] == 6
    assert len(simples(ge)) == 3


def test_self_injective_examples(sl2_3):
    assert check_self_injective(sl2_3.sub("ge"))[0]
    assert check_self_injective(dual_numbers(2, 0))[0]
    ok, dims = check_self_injective(a2_path_algebra())
    assert not ok and any(dims)


def test_triangular_examples(sl2_3, uq37):
    assert sl2_3.dim == 27 and check_triangular(sl2_3)[0]
    assert uq37.dim == 27 and check_triangular(uq37)[0]


def test_triangular_ge_without_h_rejected(sl2_3):
    t = sl2_3.tri
    h = sl2_3.index("h")
    bad = TriangularData(t.a0, [i for i in t.ge if i != h], t.le)
    with pytest.raises(AlgebraError):
        check_triangular(sl2_3, bad)


def test_subset_not_closed_is_not_subalgebra(sl2_3):
    with pytest.raises(AlgebraError) as exc:
        sl2_3.subalgebra([sl2_3.index("1"), sl2_3.index("e")])
    assert exc.value.reason == "not a subalgebra"


@pytest.mark.parametrize("p", [2, 3])
def test_opposite_involution(p):
    a = zoo.restricted_sl2(p)
    op = a.opposite()
    assert op.opposite() is a
    assert np.array_equal(op.mult, np.transpose(a.mult, (1, 0, 2)))
    e, f = a.index("e"), a.index("f")
    assert np.array_equal(op.multiply(op.basis_vector(e), op.basis_vector(f)), a.multiply(a.basis_vector(f), a.basis_vector(e)))


def test_commutative_opposite_is_same():
    b = split_cubic()
    assert np.array_equal(b.opposite().mult, b.mult)


def test_json_roundtrip(sl2_3):
    data = json.loads(sl2_3.to_json())
    assert set(data) == {"p", "basis", "unit", "mult", "tri"}
    back = GradedAlgebra.from_dict(data)
    assert back.same_as(sl2_3)
    assert back.tri == sl2_3.tri


def test_parse_error_names_field():
    with pytest.raises(AlgebraError) as exc:
        GradedAlgebra.from_json('{"p": 3, "basis": []')
    assert exc.value.reason == "parse"


def test_associativity_fault_detected(sl2_3):
    d = sl2_3.to_dict()
    g = sl2_3.generators
    for e in d["mult"]:
        if e[0] == g[1] and e[1] == g[0]:
            e[3] = (e[3] + 1) % 3
            break
    with pytest.raises(AlgebraError) as exc:
        GradedAlgebra.from_dict(d).validate()
    assert exc.value.reason == "associativity"


def test_axioms_report_reproducible(sl2_2):
    r1, r2 = verify_axioms(sl2_2), verify_axioms(sl2_2)
    assert r1.ok and r1.to_dict() == r2.to_dict()


def test_semisimple_failure_reported():
    report = verify_axioms(dual_numbers(2, 0))
    assert not report.ok and report.failure == "semisimple"
