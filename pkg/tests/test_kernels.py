import numpy as np
import pytest

from convexlab._kernels import BACKEND, _fallback

try:
    from convexlab._kernels import _khachiyan
except ImportError:
    _khachiyan = None

KERNELS = [_fallback.khachiyan_weights] + (
    [_khachiyan.khachiyan_weights] if _khachiyan is not None else []
)


def lifted_cloud(n_points, dim, seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n_points, dim))
    return np.hstack([pts, np.ones((n_points, 1))])


def test_backend_selected():
    assert BACKEND in ("cython", "python")


def test_extension_present_in_this_build():
    # the sdist ships the fallback, but this test environment builds the
    # compiled kernel; catch silent regressions to the pure path
    assert _khachiyan is not None


@pytest.mark.parametrize("kernel", KERNELS)
def test_weights_are_a_probability_vector(kernel):
    Q = lifted_cloud(200, 3, 1)
    u, iters, residual = kernel(Q.copy(), 1e-7, 100_000)
    assert np.all(u >= -1e-15)
    assert np.sum(u) == pytest.approx(1.0, abs=1e-9)
    assert residual <= 1e-7
    assert iters > 0


@pytest.mark.parametrize("kernel", KERNELS)
def test_kkt_certificate(kernel):
    Q = lifted_cloud(500, 4, 2)
    u, _, _ = kernel(Q.copy(), 1e-7, 100_000)
    V = (Q * u[:, None]).T @ Q
    M = np.einsum("ij,jk,ik->i", Q, np.linalg.inv(V), Q)
    D = Q.shape[1]
    assert np.max(M) <= (1 + 1e-6) * D


@pytest.mark.skipif(_khachiyan is None, reason="compiled kernel not built")
def test_backends_agree():
    for seed in range(3):
        Q = lifted_cloud(300, 3, seed)
        u_py, it_py, r_py = _fallback.khachiyan_weights(Q.copy(), 1e-7, 100_000)
        u_cy, it_cy, r_cy = _khachiyan.khachiyan_weights(Q.copy(), 1e-7, 100_000)
        assert it_py == it_cy
        assert np.max(np.abs(u_py - u_cy)) < 1e-10
        assert r_py == pytest.approx(r_cy, abs=1e-12)


@pytest.mark.skipif(_khachiyan is None, reason="compiled kernel not built")
def test_compiled_kernel_accepts_readonly_buffer():
    Q = lifted_cloud(50, 2, 0)
    Q.setflags(write=False)
    u, _, _ = _khachiyan.khachiyan_weights(Q, 1e-7, 10_000)
    assert np.sum(u) == pytest.approx(1.0, abs=1e-9)


def test_env_override_forces_python(tmp_path):
    import subprocess
    import sys

    code = "import convexlab; print(convexlab.KERNEL_BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"CONVEXLAB_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.stdout.strip() == "python"
