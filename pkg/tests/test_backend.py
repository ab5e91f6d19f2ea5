import os
import subprocess
import sys

import numpy as np
import pytest

from rotamime import _nb, _np, backend

KINDS = [_np.EOS, _np.ARCTAN, _np.ERF]
B = 3 / 11
INV_N = 1 / 11


@pytest.mark.parametrize("kind", KINDS)
def test_g_and_derivative_agree(kind):
    xs = np.linspace(-2, 2, 1001)
    for a in (5.0, 40.0, 300.0):
        g_np = _np.g(kind, a, xs)
        g_nb = np.array([_nb.g(kind, a, x) for x in xs])
        # erfc tails from math and scipy differ by a few ulps
        np.testing.assert_allclose(g_nb, g_np, rtol=1e-13, atol=1e-300)
        d_np = _np.dg(kind, a, xs, 1)
        d_nb = np.array([_nb.dg1(kind, a, x) for x in xs])
        np.testing.assert_allclose(d_nb, d_np, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("mode", [_np.MAP_F, _np.MAP_HYBRID])
def test_short_trajectories_agree(mode):
    t_np = _np.trajectory(_np.EOS, 110.0, B, mode, INV_N, 0.0123, 50)
    t_nb = _nb.trajectory(_np.EOS, 110.0, B, mode, INV_N, 0.0123, 50)
    np.testing.assert_allclose(t_nb, t_np, rtol=0, atol=1e-12)


def test_G_zero_is_nan_in_both():
    assert np.isnan(_np.step(_np.EOS, 10.0, B, _np.MAP_G, INV_N, 0.0))
    assert np.isnan(_nb.step(_np.EOS, 10.0, B, _np.MAP_G, INV_N, 0.0))


def test_scan_block_periods_agree():
    a = np.array([110.0, 110.0, 150.0, 150.0, 170.0, 40.0])
    x0 = np.array([-0.04, 0.04, -0.03, 0.03, 0.02, 0.09])
    args = (_np.EOS, a, B, _np.MAP_F, INV_N, x0, 20_000, 22, 200, 1e-9)
    s_np, p_np = _np.scan_block(*args)
    s_nb, p_nb = _nb.scan_block(*args)
    np.testing.assert_array_equal(p_nb, p_np)
    assert list(p_np[:5]) == [11] * 5
    # periodic rows match; the last row is chaotic and may drift apart
    periodic = p_np > 0
    np.testing.assert_allclose(np.sort(s_nb[periodic], axis=1), np.sort(s_np[periodic], axis=1),
                               rtol=0, atol=1e-9)


def test_basin_block_agree():
    orbit = np.sort(_np.trajectory(_np.EOS, 40.0, 1 / 3, _np.MAP_F, 1 / 3, 0.1, 30_000)[-3:])
    x0 = np.linspace(-5, 5, 97)
    args = (_np.EOS, 40.0, 1 / 3, _np.MAP_F, 1 / 3, x0, orbit, 3, 20_000, 1e-9)
    np.testing.assert_array_equal(_nb.basin_block(*args), _np.basin_block(*args))


def test_env_flag_selects_numpy():
    env = dict(os.environ, ROTAMIME_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", "from rotamime import backend; print(backend.NAME)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    assert backend.NAME in ("numba", "numpy")
