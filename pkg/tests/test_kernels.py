import os
import subprocess
import sys

import numpy as np
import pytest

from taitkneser import kernels
from taitkneser.conics import GRAM, Family
from taitkneser.osculate import random_parameters

needs_compiled = pytest.mark.skipif(
    "cython" not in kernels.available_backends(), reason="compiled kernels not built"
)


def test_backend_lookup():
    assert "python" in kernels.available_backends()
    assert kernels.get_backend("python").hooke_scan is not None
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_interval_matrix_is_symmetric_with_zero_diagonal():
    rng = np.random.default_rng(0)
    p = rng.normal(size=(40, 3))
    q, qn = kernels.get_backend("python").pairwise_interval_matrix(p, GRAM[Family.CIRCLE])
    np.testing.assert_array_equal(q, q.T)
    assert np.all(np.diag(q) == 0) and np.all(np.diag(qn) == 0)
    d = p[3] - p[7]
    assert q[3, 7] == pytest.approx(-d[0] ** 2 - d[1] ** 2 + d[2] ** 2, rel=1e-14)


@needs_compiled
@pytest.mark.parametrize("family", ["circle", "hooke", "kepler", "vparabola", "flinear"])
def test_interval_matrix_backends_agree(family):
    rng = np.random.default_rng(1)
    p = random_parameters(family, 60, rng)
    g = GRAM[Family(family)]
    qp, qnp_ = kernels.get_backend("python").pairwise_interval_matrix(p, g)
    qc, qnc = kernels.get_backend("cython").pairwise_interval_matrix(p, g)
    np.testing.assert_allclose(qc, qp, rtol=1e-13, atol=1e-14)
    np.testing.assert_allclose(qnc, qnp_, rtol=1e-13, atol=1e-14)


@needs_compiled
def test_hooke_scan_backends_agree():
    rng = np.random.default_rng(3)
    m1 = random_parameters("hooke", 400, rng)
    m2 = random_parameters("hooke", 400, rng)
    py = kernels.get_backend("python").hooke_scan(m1, m2)
    cy = kernels.get_backend("cython").hooke_scan(m1, m2)
    kind_p, ncross_p, smin_p, smax_p, pts_p, nsus_p, _ = py
    kind_c, ncross_c, smin_c, smax_c, pts_c, nsus_c, _ = cy
    np.testing.assert_array_equal(kind_c, kind_p)
    np.testing.assert_array_equal(ncross_c, ncross_p)
    np.testing.assert_array_equal(nsus_c, nsus_p)
    np.testing.assert_allclose(smin_c, smin_p, rtol=1e-12, atol=1e-14)
    np.testing.assert_allclose(smax_c, smax_p, rtol=1e-12, atol=1e-14)
    for a, b in zip(pts_p, pts_c):
        a = a[~np.isnan(a[:, 0])]
        b = b[~np.isnan(b[:, 0])]
        a = a[np.lexsort(a.T)]
        b = b[np.lexsort(b.T)]
        np.testing.assert_allclose(b, a, rtol=0, atol=2e-9 * (1 + np.max(np.abs(a), initial=0)))


def test_hooke_scan_finds_known_crossings():
    # x^2 + y^2/4 = 1 against x^2/4 + y^2 = 1 meet at (+-2/sqrt5, +-2/sqrt5)
    scan = kernels.get_backend("python").hooke_scan([[1, 0, 0.25]], [[0.25, 0, 1]])
    kind, ncross, _, _, pts, _, _ = scan
    assert kind[0] == 1 and ncross[0] == 4
    np.testing.assert_allclose(np.abs(pts[0, :4]), 2 / np.sqrt(5), atol=1e-9)


def test_hooke_scan_rejects_odd_sample_count():
    with pytest.raises(ValueError):
        kernels.get_backend("python").hooke_scan([[1, 0, 1]], [[2, 0, 2]], n_samples=7)


def test_pure_python_switch():
    env = dict(os.environ, TAITKNESER_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from taitkneser import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
