import numpy as np
import pytest

from sinfty import exactla as la


def test_prime_check():
    assert la.check_prime(7) == 7
    with pytest.raises(ValueError):
        la.check_prime(9)


def test_rank_zero_matrix():
    r, ker = la.rank_nullspace(np.zeros((2, 3), dtype=np.int64), 5)
    assert r == 0 and ker.shape == (3, 3)


def test_rank_identity():
    r, ker = la.rank_nullspace(np.eye(4, dtype=np.int64), 3)
    assert r == 4 and ker.shape[1] == 0


def test_rank_one_kernel_f5():
    r, ker = la.rank_nullspace(np.array([[1, 2], [2, 4]]), 5)
    assert r == 1
    v = ker[:, 0] * pow(int(ker[1, 0]), -1, 5) % 5
    assert v.tolist() == [3, 1]


def test_solve_identity_and_inconsistent():
    b = np.array([1, 2, 0])
    assert la.solve(np.eye(3, dtype=np.int64), b, 5).tolist() == [1, 2, 0]
    assert la.solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 5) is None


def test_solve_triangular_f3():
    x = la.solve(np.array([[1, 1], [0, 2]]), np.array([0, 1]), 3)
    assert x.tolist() == [1, 2]
    assert (la.matmul(np.array([[1, 1], [0, 2]]), x.reshape(2, 1), 3).ravel() == [0, 1]).all()


def test_quotient_basis_cases():
    proj, sect = la.quotient_basis(3, np.zeros((3, 0), dtype=np.int64), 2)
    assert proj.shape == (3, 3) and la.rank(proj, 2) == 3
    proj, sect = la.quotient_basis(3, np.eye(3, dtype=np.int64), 2)
    assert proj.shape[0] == 0
    proj, sect = la.quotient_basis(3, np.array([[1], [0], [0]]), 2)
    assert proj.shape[0] == 2
    assert not la.matmul(proj, np.array([[1], [0], [0]]), 2).any()
    assert (la.matmul(proj, sect, 2) == np.eye(2, dtype=np.int64)).all()


def test_inverse_roundtrip():
    rng = np.random.default_rng(0)
    for p in (2, 3, 7):
        for _ in range(5):
            a = rng.integers(0, p, (5, 5))
            if la.rank(a, p) < 5:
                continue
            assert (la.matmul(a, la.inverse(a, p), p) == np.eye(5, dtype=np.int64)).all()


@pytest.mark.parametrize("p", [2, 5, 11])
def test_backends_agree(p):
    rng = np.random.default_rng(p)
    try:
        for _ in range(5):
            a = rng.integers(0, p, (30, 45))
            a[:, 10] = (a[:, 3] + a[:, 4]) % p
            la.set_backend("numpy")
            r1, k1 = la.rank_nullspace(a, p)
            la.set_backend("flint")
            r2, k2 = la.rank_nullspace(a, p)
            assert r1 == r2
            assert not la.matmul(a, k2, p).any() and k2.shape == k1.shape
    finally:
        la.set_backend("auto")


def test_echelon_basis():
    eb = la.EchelonBasis(3, 5)
    assert eb.add([1, 2, 0])
    assert not eb.add([2, 4, 0])
    assert eb.add([0, 0, 1])
    assert eb.contains([3, 1, 4]) and eb.dim == 2
