import os
import subprocess
import sys

import numpy as np
import pytest

from sifbm import COMPILED_AVAILABLE, backend, gram, rectangles
from sifbm import _kernels_py

needs_compiled = pytest.mark.skipif(
    not COMPILED_AVAILABLE, reason="compiled extension not built")

if COMPILED_AVAILABLE:
    from sifbm import _kernels as _compiled
else:
    _compiled = None

# inverse normal CDF references, frozen from an independent
# high-precision implementation
PPF_TABLE = [
    (1e-300, -37.0470962993612),
    (1e-12, -7.034483825301131),
    (0.0075, -2.4323790585844467),
    (0.2, -0.8416212335729142),
    (0.5, 0.0),
    (0.6, 0.2533471031357997),
    (0.925, 1.4395314709384563),
    (0.9249999990000001, 1.439531463874086),
    (0.975, 1.959963984540054),
    (0.999999999999, 7.0344869100478356),
]


class TestInverseNormal:
    def test_frozen_table(self):
        for p, want in PPF_TABLE:
            got = _kernels_py.inverse_normal_cdf(p)
            assert got == pytest.approx(want, rel=1e-13, abs=5e-15)

    def test_symmetry(self):
        for p in (0.01, 0.2, 0.4, 0.49):
            a = _kernels_py.inverse_normal_cdf(p)
            b = _kernels_py.inverse_normal_cdf(1.0 - p)
            assert a == pytest.approx(-b, rel=1e-12)

    def test_monotone(self):
        ps = np.linspace(1e-6, 1.0 - 1e-6, 1001)
        xs = [_kernels_py.inverse_normal_cdf(p) for p in ps]
        assert all(a < b for a, b in zip(xs, xs[1:]))


class TestUniform:
    def test_range_and_determinism(self):
        xs = [_kernels_py.uniform01(12345, 0, i) for i in range(1000)]
        assert all(0.0 < x < 1.0 for x in xs)
        again = [_kernels_py.uniform01(12345, 0, i) for i in range(1000)]
        assert xs == again

    def test_streams_differ_by_path(self):
        a = [_kernels_py.uniform01(7, 0, i) for i in range(100)]
        b = [_kernels_py.uniform01(7, 1, i) for i in range(100)]
        assert a != b

    def test_streams_differ_by_seed(self):
        a = [_kernels_py.uniform01(7, 0, i) for i in range(100)]
        b = [_kernels_py.uniform01(8, 0, i) for i in range(100)]
        assert a != b

    def test_roughly_uniform(self):
        xs = np.array([_kernels_py.uniform01(99, p, i)
                       for p in range(10) for i in range(1000)])
        assert abs(xs.mean() - 0.5) < 0.01
        assert abs((xs < 0.25).mean() - 0.25) < 0.02


@needs_compiled
class TestBitIdentical:
    def test_uniform01(self):
        for seed, path, i in [(0, 0, 0), (42, 3, 17), (2**63, 1000, 999),
                              ((1 << 64) - 1, 0, 0)]:
            assert _compiled.uniform01(seed, path, i) == \
                _kernels_py.uniform01(seed, path, i)

    def test_inverse_normal(self):
        for p, _ in PPF_TABLE:
            assert _compiled.inverse_normal_cdf(p) == \
                _kernels_py.inverse_normal_cdf(p)

    def test_standard_normal(self):
        for path in range(4):
            for i in range(50):
                assert _compiled.standard_normal(11, path, i) == \
                    _kernels_py.standard_normal(11, path, i)

    def test_jacobi(self, four_rectangles):
        for h in (0.3, 0.5, 0.75):
            m = np.ascontiguousarray(
                gram(rectangles(2), h, four_rectangles).entries)
            vc, okc = _compiled.jacobi_eigenvalues(m, 50, 1e-13)
            vp, okp = _kernels_py.jacobi_eigenvalues(m, 50, 1e-13)
            assert okc == okp
            assert np.array_equal(vc, vp)

    def test_cholesky(self, four_rectangles):
        m = np.ascontiguousarray(
            gram(rectangles(2), 0.5, four_rectangles).entries)
        lc, okc = _compiled.cholesky_semidefinite(m, 1e-13)
        lp, okp = _kernels_py.cholesky_semidefinite(m, 1e-13)
        assert okc == okp
        assert np.array_equal(lc, lp)

    def test_sample_paths(self, four_rectangles):
        m = np.ascontiguousarray(
            gram(rectangles(2), 0.5, four_rectangles).entries)
        lower, ok = _kernels_py.cholesky_semidefinite(m, 1e-13)
        assert ok
        lower = np.ascontiguousarray(lower)
        a = _compiled.sample_paths(lower, 42, 25)
        b = _kernels_py.sample_paths(lower, 42, 25)
        assert np.array_equal(a, b)


class TestBackendSelection:
    def _backend_name(self, env_value):
        env = dict(os.environ)
        env.pop("SIFBM_BACKEND", None)
        if env_value is not None:
            env["SIFBM_BACKEND"] = env_value
        proc = subprocess.run(
            [sys.executable, "-c",
             "import sifbm; print(sifbm.BACKEND_NAME)"],
            capture_output=True, text=True, env=env)
        return proc.returncode, proc.stdout.strip()

    def test_forced_python(self):
        rc, name = self._backend_name("python")
        assert rc == 0 and name == "python"

    @needs_compiled
    def test_forced_compiled(self):
        rc, name = self._backend_name("compiled")
        assert rc == 0 and name == "compiled"

    def test_auto_prefers_compiled(self):
        rc, name = self._backend_name(None)
        assert rc == 0
        assert name == ("compiled" if COMPILED_AVAILABLE else "python")
        rc, name2 = self._backend_name("auto")
        assert rc == 0 and name2 == name

    def test_unknown_value_fails_import(self):
        rc, _ = self._backend_name("fortran")
        assert rc != 0

    def test_python_backend_full_pipeline(self):
        # the fallback must produce byte-identical samples end to end
        env = dict(os.environ)
        env["SIFBM_BACKEND"] = "python"
        code = (
            "from sifbm import sample_field, chain, ChainPoint\n"
            "f = sample_field(chain(), 0.5,"
            " [ChainPoint(1.0), ChainPoint(2.0)], 42, 3)\n"
            "print(f.values.tobytes().hex())\n"
        )
        proc = subprocess.run([sys.executable, "-c", code],
                              capture_output=True, text=True, env=env)
        assert proc.returncode == 0
        from sifbm import ChainPoint, chain as chain_coll, sample_field

        f = sample_field(chain_coll(), 0.5,
                         [ChainPoint(1.0), ChainPoint(2.0)], 42, 3)
        assert proc.stdout.strip() == f.values.tobytes().hex()


class TestThreadCount:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("SIFBM_THREADS", raising=False)
        assert backend.thread_count() == 1

    def test_parses_integer(self, monkeypatch):
        monkeypatch.setenv("SIFBM_THREADS", "4")
        assert backend.thread_count() == 4

    def test_floor_at_one(self, monkeypatch):
        monkeypatch.setenv("SIFBM_THREADS", "0")
        assert backend.thread_count() == 1
        monkeypatch.setenv("SIFBM_THREADS", "-3")
        assert backend.thread_count() == 1

    def test_garbage_falls_back(self, monkeypatch):
        monkeypatch.setenv("SIFBM_THREADS", "many")
        assert backend.thread_count() == 1
        monkeypatch.setenv("SIFBM_THREADS", "")
        assert backend.thread_count() == 1
