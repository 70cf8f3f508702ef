import importlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlab import kernels
from kummerlab.dualgraph import affine, dynkin
from kummerlab.kernels import _pykernels

try:
    _ckernels = importlib.import_module("kummerlab.kernels._ckernels")
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
    if _ckernels is None:
        assert kernels.BACKEND == "python"


@needs_compiled
@pytest.mark.parametrize("p", [2, 3])
def test_scan_backends_agree(p):
    assert _ckernels.kron_lemma_scan(p) == _pykernels.kron_lemma_scan(p)


def test_python_scan_f3():
    assert _pykernels.kron_lemma_scan(3) == (6561, 324, 4, 320, 0)


@st.composite
def symmetric(draw):
    n = draw(st.integers(1, 5))
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = draw(st.integers(-4, 0))
        for j in range(i + 1, n):
            M[i][j] = M[j][i] = draw(st.integers(-1, 2))
    return M


def slow_scan(M, bound):
    import itertools
    n = len(M)
    for x in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(x) and sum(x[i] * M[i][j] * x[j] for i in range(n) for j in range(n)) >= 0:
            return False
    return True


@settings(max_examples=150)
@given(symmetric(), st.integers(1, 2))
def test_quadratic_scan_against_naive(M, bound):
    expected = slow_scan(M, bound)
    assert _pykernels.quadratic_form_scan(M, bound) == expected
    if _ckernels is not None:
        assert _ckernels.quadratic_form_scan(M, bound) == expected


@pytest.mark.parametrize("g,expected", [(dynkin("E6"), True), (dynkin("D5"), True),
                                        (affine("D", 4), False), (affine("A", 2), False)])
def test_quadratic_scan_on_diagrams(g, expected):
    assert kernels.quadratic_form_scan(g.matrix(), 2) == expected
