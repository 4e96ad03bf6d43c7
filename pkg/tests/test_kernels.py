"""Backend selection and bit-identity of the hot kernels across the numba
and numpy implementations."""

from __future__ import annotations

import hashlib
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from steinshapes import _kernels as K
from steinshapes import rbm
from steinshapes.shapes import StarDomain

# sha over the raw trajectory bytes, bump domain, seed 5, horizon 5
TRAJECTORY_SHA16 = "254890cf7b5286f1"


class TestBackendSelection:
    def test_backend_reports_live_path(self):
        assert K.backend() == ("numba" if K.NUMBA_ENABLED else "numpy")

    @pytest.mark.parametrize("flag", ["0", "false", "no", "off", "numpy", " OFF "])
    def test_disabling_values(self, monkeypatch, flag):
        monkeypatch.setenv("STEINSHAPES_NUMBA", flag)
        assert not K._want_numba()

    @pytest.mark.parametrize("flag", ["1", "true", "numba", "anything"])
    def test_enabling_values(self, monkeypatch, flag):
        monkeypatch.setenv("STEINSHAPES_NUMBA", flag)
        assert K._want_numba()

    def test_unset_means_enabled(self, monkeypatch):
        monkeypatch.delenv("STEINSHAPES_NUMBA", raising=False)
        assert K._want_numba()


class TestSeminormAgreement:
    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0])
    def test_all_three_paths_return_the_same_bits(self, seed, alpha):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(60, 300))
        pts = rng.standard_normal((n, 2)) * rng.uniform(0.1, 10.0)
        vals = rng.standard_normal(n)
        mats = rng.standard_normal((n, 4))
        circ = rng.standard_normal(int(rng.integers(32, 300)))

        assert (
            K._pair_seminorm_loop(pts, vals, alpha)
            == K._pair_seminorm_numpy(pts, vals, alpha)
            == K.pair_seminorm(pts, vals, alpha)
        )
        assert (
            K._matrix_pair_seminorm_loop(pts, mats, alpha)
            == K._matrix_pair_seminorm_numpy(pts, mats, alpha)
            == K.matrix_pair_seminorm(pts, mats, alpha)
        )
        assert (
            K._circle_lag_seminorm_loop(circ, alpha)
            == K._circle_lag_seminorm_numpy(circ, alpha)
            == K.circle_lag_seminorm(circ, alpha)
        )

    def test_hand_values(self):
        pts = np.array([[0.0, 0.0], [2.0, 0.0]])
        vals = np.array([0.0, 3.0])
        assert K.pair_seminorm(pts, vals, 1.0) == 1.5
        assert K.pair_seminorm(pts, vals, 0.5) == 3.0 / math.sqrt(2.0)
        two = np.array([0.0, 1.0])
        assert K.circle_lag_seminorm(two, 1.0) == 1.0 / math.pi

    def test_coincident_points_contribute_nothing(self):
        pts = np.zeros((4, 2))
        vals = np.arange(4.0)
        assert K.pair_seminorm(pts, vals, 1.0) == 0.0
        assert K._pair_seminorm_numpy(pts, vals, 1.0) == 0.0

    def test_tied_maxima_agree(self):
        # a lattice puts many pairs exactly at the max; the candidate
        # rescan must not double-count or miss any of them
        pts = np.array([[float(i), 0.0] for i in range(30)])
        vals = np.arange(30.0)
        assert K._pair_seminorm_loop(pts, vals, 0.3) == K._pair_seminorm_numpy(
            pts, vals, 0.3
        )


class TestReflectPath:
    def _run(self, domain, x0, y0, dx, dy):
        a, b, _ = domain._packed
        return K.reflect_path(
            float(x0),
            float(y0),
            np.ascontiguousarray(dx, dtype=float),
            np.ascontiguousarray(dy, dtype=float),
            float(domain.base_radius),
            np.ascontiguousarray(a),
            np.ascontiguousarray(b),
        )

    def test_containment_and_success_flag(self):
        rng = np.random.default_rng(2)
        steps = math.sqrt(5e-4) * rng.standard_normal((4000, 2))
        xs, ys, n_reflect, fail = self._run(
            StarDomain(1.0, (0.0, 0.15)), 0.0, 0.0, steps[:, 0], steps[:, 1]
        )
        assert fail == -1
        assert n_reflect > 0
        assert xs.shape == ys.shape == (4001,)
        assert (xs[0], ys[0]) == (0.0, 0.0)
        assert (xs * xs + ys * ys).max() <= 1.0

    def test_empty_increment_list(self):
        xs, ys, n_reflect, fail = self._run(
            StarDomain(1.0, ()), 0.3, -0.1, np.empty(0), np.empty(0)
        )
        assert fail == -1
        assert n_reflect == 0
        assert xs.tolist() == [0.3] and ys.tolist() == [-0.1]

    def test_near_tangent_normal_reports_the_step(self):
        # at cos(10 theta) = 0 the transported normal of this domain tilts
        # 71.6 degrees off radial; a long outward step from there leaves
        # no pull-back root
        spiky = StarDomain(1.0, (0.0,) * 9 + (0.3,))
        theta = math.pi / 20.0
        x0 = 0.999 * math.cos(theta)
        y0 = 0.999 * math.sin(theta)
        dx = np.array([0.06 * math.cos(theta)])
        dy = np.array([0.06 * math.sin(theta)])
        xs, ys, n_reflect, fail = self._run(spiky, x0, y0, dx, dy)
        assert fail == 0
        assert n_reflect == 0
        assert xs[1] ** 2 + ys[1] ** 2 > 1.0


class TestBackendBitIdentity:
    def test_trajectory_hash_is_frozen(self):
        trajectory, _ = rbm.path(
            StarDomain(1.0, (0.0, 0.15)), rbm.PathConfig(seed=5, horizon=5.0)
        )
        digest = hashlib.sha256(trajectory.tobytes()).hexdigest()[:16]
        assert digest == TRAJECTORY_SHA16

    def test_fallback_backend_reproduces_the_hash(self):
        script = (
            "import hashlib\n"
            "from steinshapes import rbm, _kernels\n"
            "from steinshapes.shapes import StarDomain\n"
            "assert _kernels.backend() == 'numpy'\n"
            "t, _ = rbm.path(StarDomain(1.0, (0.0, 0.15)),\n"
            "                rbm.PathConfig(seed=5, horizon=5.0))\n"
            "print(hashlib.sha256(t.tobytes()).hexdigest()[:16])\n"
        )
        env = dict(os.environ, STEINSHAPES_NUMBA="0")
        out = subprocess.run(
            [sys.executable, "-c", script],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == TRAJECTORY_SHA16
