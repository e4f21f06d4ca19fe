import numpy as np
import pytest

from torus_lattices import _kernels
from torus_lattices.lattice import Lattice, isometry_search, make_named

from oracles import box_vectors_of_norm

GRAMS = [
    [[0, 1], [1, 0]],
    [[10, 5], [5, 2]],
    [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 3], [1, 1, 3, 0]],
]

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("gram", GRAMS)
@pytest.mark.parametrize("target", [0, 2, -2])
def test_numpy_path_matches_brute_force(gram, target):
    got = _kernels.vectors_of_norm_numpy(np.array(gram, dtype=np.int64), 2, target)
    assert [tuple(v) for v in got] == box_vectors_of_norm(gram, 2, target)


@needs_numba
@pytest.mark.parametrize("gram", GRAMS)
@pytest.mark.parametrize("target", [0, 2, -2, 10])
def test_numba_path_matches_numpy(gram, target):
    g = np.array(gram, dtype=np.int64)
    a = _kernels.vectors_of_norm_numba(g, 3, target)
    b = _kernels.vectors_of_norm_numpy(g, 3, target)
    assert np.array_equal(a, b)


@needs_numba
def test_pair_products_agree():
    g = np.array(GRAMS[2], dtype=np.int64)
    rng = np.random.default_rng(0)
    left = rng.integers(-4, 5, size=(30, 4))
    right = rng.integers(-4, 5, size=(7, 4))
    assert np.array_equal(_kernels.pair_products_numba(left, g, right),
                          _kernels.pair_products_numpy(left, g, right))


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv("TORUS_LATTICES_KERNEL", "numpy")
    assert _kernels.backend() == "numpy"
    monkeypatch.setenv("TORUS_LATTICES_KERNEL", "fortran")
    if _kernels.HAS_NUMBA:
        with pytest.raises(ValueError):
            _kernels.backend()


@pytest.mark.parametrize("flag", ["numpy", "numba"])
def test_isometry_search_same_answer_on_both_paths(monkeypatch, flag):
    if flag == "numba" and not _kernels.HAS_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setenv("TORUS_LATTICES_KERNEL", flag)
    a = Lattice([[10, 5], [5, 2]])
    p = isometry_search(a, make_named("H5"), 3)
    assert p is not None
    assert p.T @ a.gram @ p == make_named("H5").gram


def test_overflow_aborts_loudly():
    g = np.array([[2 ** 58, 0], [0, 1]], dtype=np.int64)
    with pytest.raises(OverflowError):
        _kernels.check_int64_budget(g, 5)
    big = Lattice([[2 ** 58, 0], [0, 2]])
    with pytest.raises(OverflowError):
        isometry_search(big, big, 5)
