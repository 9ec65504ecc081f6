"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``TAITKNESER_PURE_PYTHON`` is set.
"""

import numpy as np

MAX_CROSSINGS = 8
MAX_SUSPECTS = 8


def pairwise_interval_matrix(params, gram):
    """All-pairs ``Q(p_j - p_i)`` and its Euclidean-normalized version."""
    P = np.ascontiguousarray(params, dtype=float)
    G = np.asarray(gram, dtype=float)
    d = P[None, :, :] - P[:, None, :]
    q = np.einsum("ijk,kl,ijl->ij", d, G, d)
    n2 = np.einsum("ijk,ijk->ij", d, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        qn = np.where(n2 > 0, q / np.where(n2 > 0, n2, 1.0), 0.0)
    return q, qn


def central_frame(m):
    """Eigen-frame of each form ``(a, b, c)`` in an ``(k, 3)`` array.

    Returns ``(lam1, lam2, cos_phi, sin_phi, kind)`` with ``lam1 >= lam2`` and
    ``kind`` 1 for an ellipse, -1 for a hyperbola, 0 otherwise.
    """
    a, b, c = m[:, 0], m[:, 1], m[:, 2]
    half_tr = 0.5 * (a + c)
    rad = np.hypot(0.5 * (a - c), b)
    lam1 = half_tr + rad
    lam2 = half_tr - rad
    phi = 0.5 * np.arctan2(2.0 * b, a - c)
    kind = np.where(lam2 > 0, 1, np.where((lam1 > 0) & (lam2 < 0), -1, 0))
    return lam1, lam2, np.cos(phi), np.sin(phi), kind


def boundary_points(lam1, lam2, cph, sph, kind, s, branch):
    """Boundary point at parameter ``s`` (arrays broadcast together)."""
    ell = kind == 1
    l1 = np.where(lam1 > 0, lam1, 1.0)
    l2 = np.abs(np.where(lam2 != 0, lam2, 1.0))
    u = np.where(ell, np.cos(s), branch * np.cosh(s)) / np.sqrt(l1)
    v = np.where(ell, np.sin(s), np.sinh(s)) / np.sqrt(l2)
    return cph * u - sph * v, sph * u + cph * v


def side_values(m2, x, y):
    """``(Q2(p) - 1)`` divided by the sum of its term magnitudes."""
    a, b, c = m2[:, 0:1], m2[:, 1:2], m2[:, 2:3]
    if x.ndim == 1:
        a, b, c = a[:, 0], b[:, 0], c[:, 0]
    val = a * x * x + 2.0 * b * x * y + c * y * y - 1.0
    scale = np.abs(a) * x * x + 2.0 * np.abs(b * x * y) + np.abs(c) * y * y + 1.0
    return val / scale


def hooke_scan(m1, m2, n_samples=720, extent=4.0, band=1e-8, xtol=1e-10):
    """Sample the boundary of each central conic in ``m1`` against the form in ``m2``.

    For every pair ``k`` the boundary of ``m1[k]`` is sampled at
    ``n_samples`` parameters (an ellipse over one turn, a hyperbola over
    ``[-extent, extent]`` on each branch) and ``g = (Q2(p) - 1) / scale`` is
    evaluated.  Strict sign changes (both sides beyond ``band``) are refined
    by bisection on the boundary parameter to ``xtol``.

    Samples that are local minima of ``|g|`` without a strict sign change,
    and close enough to zero that ``g`` might touch or cross zero between
    neighbours, are reported as suspects: ``(s_prev, s_next, branch)``.

    Returns ``(kind, n_cross, smin, smax, points, n_suspect, suspects)``
    where ``kind`` is 1 for an ellipse, -1 for a hyperbola and 0 for a
    degenerate or imaginary ``m1``.
    """
    if n_samples % 2:
        raise ValueError("n_samples must be even")
    m1 = np.atleast_2d(np.asarray(m1, dtype=float))
    m2 = np.atleast_2d(np.asarray(m2, dtype=float))
    k = m1.shape[0]
    lam1, lam2, cph, sph, kind = central_frame(m1)
    kind = kind.astype(np.int64)
    n_cross = np.zeros(k, dtype=np.int64)
    n_susp = np.zeros(k, dtype=np.int64)
    smin = np.full(k, np.nan)
    smax = np.full(k, np.nan)
    pts = np.full((k, MAX_CROSSINGS, 2), np.nan)
    susp = np.full((k, MAX_SUSPECTS, 3), np.nan)
    ok = kind != 0
    if not np.any(ok):
        return kind, n_cross, smin, smax, pts, n_susp, susp

    half = n_samples // 2
    two_pi = 2.0 * np.pi
    ell_s = np.linspace(0.0, two_pi, n_samples, endpoint=False)
    hyp_s = np.linspace(-extent, extent, half)
    # (k, n_samples) parameters and branch signs; ellipses are periodic
    is_ell = (kind == 1)[:, None]
    S = np.where(is_ell, ell_s[None, :], np.concatenate([hyp_s, hyp_s])[None, :])
    branch = np.where(np.arange(n_samples) < half, 1.0, -1.0)[None, :] * np.ones((k, 1))
    branch = np.where(is_ell, 1.0, branch)
    frame = tuple(v[:, None] for v in (lam1, lam2, cph, sph, kind))
    x, y = boundary_points(*frame, S, branch)
    g = side_values(m2, x, y)

    smin[ok] = np.min(g[ok], axis=1)
    smax[ok] = np.max(g[ok], axis=1)

    # forward neighbours: cyclic for ellipses, within a branch for hyperbolas
    idx = np.arange(n_samples)
    nxt = np.roll(idx, -1)
    prv = np.roll(idx, 1)
    hi_s = S[:, nxt].copy()
    hi_s[:, -1] = np.where(kind == 1, two_pi, hi_s[:, -1])
    lo_prev = S[:, prv].copy()
    lo_prev[:, 0] = np.where(kind == 1, -two_pi / n_samples, lo_prev[:, 0])
    g_next = g[:, nxt]
    g_prev = g[:, prv]
    has_next = np.ones((k, n_samples), dtype=bool)
    has_next[:, half - 1] = kind == 1
    has_next[:, n_samples - 1] = kind == 1
    has_prev = np.ones((k, n_samples), dtype=bool)
    has_prev[:, 0] = kind == 1
    has_prev[:, half] = kind == 1
    cross = (
        has_next & ok[:, None] & (np.abs(g) > band) & (np.abs(g_next) > band)
        & (np.sign(g) != np.sign(g_next))
    )
    dip = np.abs(g_prev - 2.0 * g + g_next)
    suspect = (
        has_next & has_prev & ok[:, None]
        & (np.abs(g) <= np.abs(g_prev)) & (np.abs(g) <= np.abs(g_next))
        & (np.abs(g) <= 0.5 * dip + band)
        & ~cross & ~cross[:, prv]
    )

    pair, col = np.nonzero(suspect)
    for p, c in zip(pair, col):
        j = n_susp[p]
        if j < MAX_SUSPECTS:
            susp[p, j] = (lo_prev[p, c], hi_s[p, c], branch[p, c])
        n_susp[p] = j + 1

    pair, col = np.nonzero(cross)
    if pair.size:
        lo = S[pair, col]
        hi = hi_s[pair, col]
        br = branch[pair, col]
        glo = g[pair, col]
        fargs = tuple(v[pair] for v in (lam1, lam2, cph, sph, kind))
        sub = m2[pair]
        while np.max(hi - lo) > xtol:
            mid = 0.5 * (lo + hi)
            xm, ym = boundary_points(*fargs, mid, br)
            gm = side_values(sub, xm, ym)
            same = np.sign(gm) == np.sign(glo)
            lo = np.where(same, mid, lo)
            glo = np.where(same, gm, glo)
            hi = np.where(same, hi, mid)
        xr, yr = boundary_points(*fargs, 0.5 * (lo + hi), br)
        for p, xv, yv in zip(pair, xr, yr):
            c = n_cross[p]
            if c < MAX_CROSSINGS:
                pts[p, c, 0] = xv
                pts[p, c, 1] = yv
            n_cross[p] = c + 1
    return kind, n_cross, smin, smax, pts, n_susp, susp
