import numpy as np
import pytest

from sinfty import zoo
from sinfty.galg import GradedAlgebra, TriangularData
from sinfty.gmod import GradedModule


def table_algebra(p, names, degrees, products, unit, tri=None, label=""):
    """Algebra from a dict ``(i, j) -> {k: c}`` of nonzero products."""
    n = len(names)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), out in products.items():
        for k, c in out.items():
            mult[i, j, k] = c % p
    return GradedAlgebra(p, names, degrees, mult, unit, tri=tri, label=label)


def dual_numbers(p=2, deg=1):
    """``F_p[x]/(x^2)``."""
    tri = TriangularData([0, 1], [0, 1], [0, 1]) if deg == 0 else None
    return table_algebra(p, ["1", "x"], [0, deg], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [1, 0], tri, "dual numbers")


def split_cubic():
    """``F_3[h]/(h^3 - h)``."""
    prods = {}
    for i in range(3):
        for j in range(3):
            e = i + j
            prods[(i, j)] = {e if e < 3 else e - 2: 1}
    return table_algebra(3, ["1", "h", "h^2"], [0, 0, 0], prods, [1, 0, 0], label="F3[h]/(h^3-h)")


def cyclic_group_algebra():
    """``F_7[Z/3]``."""
    prods = {(i, j): {(i + j) % 3: 1} for i in range(3) for j in range(3)}
    return table_algebra(7, ["1", "g", "g^2"], [0, 0, 0], prods, [1, 0, 0], label="F7[Z/3]")


def a2_path_algebra():
    """Path algebra of ``1 -> 2`` over F_3; basis e1, e2, alpha."""
    prods = {(0, 0): {0: 1}, (1, 1): {1: 1}, (1, 2): {2: 1}, (2, 0): {2: 1}}
    return table_algebra(3, ["e1", "e2", "alpha"], [0, 0, 1], prods, [1, 1, 0], label="A2 path algebra")


def trivial_of(a):
    return GradedModule(a, [0], {g: np.zeros((1, 1), dtype=np.int64) for g in a.generators}, label="k")


@pytest.fixture(scope="session")
def sl2_2():
    return zoo.restricted_sl2(2)


@pytest.fixture(scope="session")
def sl2_3():
    return zoo.restricted_sl2(3)


@pytest.fixture(scope="session")
def uq37():
    return zoo.small_quantum_sl2(3, 7)


@pytest.fixture(scope="session")
def dualnum():
    return dual_numbers()


# ---------------------------------------------------------------- acceptance report

_CRITERIA: dict = {}
_NOTES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or rep.failed:
        _CRITERIA[n] = _CRITERIA.get(n, True) and rep.passed


@pytest.fixture
def note(request):
    """Attach a line of text to the criterion of the running test."""
    mark = request.node.get_closest_marker("criterion")

    def add(text):
        _NOTES.setdefault(mark.args[0], []).append(text)

    return add


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
        for text in _NOTES.get(n, []):
            terminalreporter.write_line(f"    {text}")
