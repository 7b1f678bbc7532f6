"""The compiled kernels and the pure-Python twins agree."""
import os
import subprocess
import sys
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from class16 import _pykernels, kernels
from class16.numeric import QuadIrr

ck = pytest.importorskip("class16._ckernels")

nonsquare = st.integers(2, 10**6).filter(lambda d: isqrt(d) ** 2 != d)


@settings(max_examples=300, deadline=None)
@given(st.builds(QuadIrr.from_any, st.integers(-5000, 5000), st.integers(-500, 500).filter(bool), nonsquare))
def test_negcf_expand_agrees(x):
    # the compiled kernel locates the period by reducedness, the fallback by state lookup
    expected = _pykernels.negcf_expand(x.P, x.Q, x.D, 10**6)
    try:
        assert ck.negcf_expand(x.P, x.Q, x.D, 10**6) == expected
    except OverflowError:
        pass  # the preperiod left the int64 range; the dispatcher covers this
    assert kernels.negcf_expand(x.P, x.Q, x.D, 10**6) == expected


@pytest.mark.parametrize("p", [7, 79, 439, 1999, 43063])
def test_count_reduced_definite_agrees(p):
    assert ck.count_reduced_definite(-p) == _pykernels.count_reduced_definite(-p)


@settings(max_examples=50, deadline=None)
@given(st.integers(-20000, -3).filter(lambda d: d % 4 in (0, 1)))
def test_count_reduced_definite_general(D):
    assert ck.count_reduced_definite(D) == _pykernels.count_reduced_definite(D)


@pytest.mark.parametrize("p", [7, 79, 439, 4003, 43063])
def test_indefinite_cycles_agree(p):
    assert ck.reduced_indefinite_forms(4 * p) == _pykernels.reduced_indefinite_forms(4 * p)
    assert ck.indefinite_cycles(4 * p) == _pykernels.indefinite_cycles(4 * p)


@pytest.mark.parametrize("p", [7, 79, 439, 19997, 43063])
def test_half_factorial_agrees(p):
    assert ck.half_factorial_mod(p) == _pykernels.half_factorial_mod(p)


def test_overflow_falls_back():
    P = 10**10  # small D, but the starting numerator is past the int64 guard
    assert kernels.negcf_expand(P, 1, 79, 1000) == _pykernels.negcf_expand(P, 1, 79, 1000)
    with pytest.raises(OverflowError):
        ck.negcf_expand(P, 1, 79, 1000)


def test_backend_is_cython_when_built():
    assert kernels.BACKEND == "cython"


def _sweep_output(pure):
    env = dict(os.environ)
    env.pop("CLASS16_PURE_PYTHON", None)
    if pure:
        env["CLASS16_PURE_PYTHON"] = "1"
    cmd = [sys.executable, "-m", "class16", "sweep", "4", "3000", "--jobs", "1", "--json"]
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_pure_python_backend_end_to_end():
    ver = subprocess.run(
        [sys.executable, "-m", "class16", "--version"],
        env={**os.environ, "CLASS16_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
    )
    assert "python kernels" in ver.stdout
    assert _sweep_output(pure=True) == _sweep_output(pure=False)
