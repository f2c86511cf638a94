"""JWKB quasimode construction and residual certification.

Pipeline, for a potential family ``P`` and a validated anchor
``(a, eta, h, z)``:

1. :func:`build_eikonal` solves the complex eikonal equation
   ``(psi'(s))^2 = V_h(a+s) - V_h(a) - eta^2`` in truncated series,
   taking the square-root branch ``i*eta`` at s = 0 and integrating
   with psi(0) = 0.  This is the leading phase ``psi[-1]``.
2. :func:`build_transport` generates the corrections ``psi_0 .. psi_n``
   by the transport recursion
   ``psi_{m+1}' = rho * (psi_m'' - sum_j psi_j' psi_{m-j}')`` with
   ``rho = 1/(2 psi_{-1}')``, normalized by psi_m(0) = 0.
3. The same algebra is repeated at a chain of re-expansion points along
   the real axis (:class:`PiecewisePhase`), continuing the square-root
   branch and the integration constants from segment to segment.  A
   single central series only converges up to the nearest complex
   turning point, which is far too small an interval for the cutoff:
   the exponential suppression of the cutoff commutator needs
   ``gamma * delta^2 >> h``, and the piecewise representation makes
   radii of a few length units available.
4. :func:`select_delta` certifies, on a 512-point grid over
   ``[-delta, delta]``, a concentration rate gamma with
   ``gamma*s^2 <= Re psi_{-1}(s) <= 3*gamma*s^2`` and a finite bound on
   ``rho``; delta starts at the piecewise coverage and shrinks until
   certification succeeds.
5. :func:`residual_ratio` evaluates the exact pointwise residual of
   ``f~ = cutoff * exp(-psi)`` (with the true potential, not a Taylor
   truncation) by composite Gauss-Legendre quadrature and returns a
   :class:`Certificate` whose ``lower_bound = 1/r`` bounds the
   resolvent norm at z from below.

:func:`phi_cascade` reconstructs the coefficient functions of
``Hf - zf = (sum_m h^m phi_m) f``; the transport recursion forces
``phi_0 .. phi_{n+1}`` to vanish and the surviving tail
``phi_{n+2} .. phi_{2n+2}`` drives the O(h^{n+2}) residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, DegenerateAnchorError, UsageError
from .potential import HALF_LINE, Anchor
from .series import TruncatedSeries

#: grid points used to certify (delta, gamma)
GAMMA_GRID = 512

#: delta shrink factor and maximum shrink steps during certification
DELTA_SHRINK = 0.9
MAX_SHRINKS = 40

#: Gauss-Legendre nodes per quadrature panel
PANEL_NODES = 16

#: quadrature refinement target (relative change between doublings)
QUAD_RTOL = 1e-8

MAX_DOUBLINGS = 8

#: how far the piecewise phase marches out by default (local coordinate)
DEFAULT_SPAN = 6.0

#: fraction of the local radius estimate used as re-expansion step
STEP_FRACTION = 0.35

MAX_SEGMENTS = 400


def default_truncation(n):
    """Default series truncation degree for JWKB order n."""
    return 2 * n + 16


@dataclass
class PhaseExpansion:
    """Central phases psi_{-1}, psi_0, ..., psi_n; ``psi[0]`` is psi_{-1}."""

    psi: list  # of TruncatedSeries, length n + 2
    n: int
    K: int
    anchor: Anchor


# -- central construction -------------------------------------------------


def eikonal_rhs(P, anchor, K, at=0.0):
    """Series of V_h(a + at + t) - V_h(a) - eta^2 in the shift t."""
    rhs = P.taylor_at(anchor.h, anchor.a + at, K)
    return rhs.shifted_constant(-(P.eval(anchor.h, anchor.a) + anchor.eta**2))


def build_eikonal(P, anchor, K):
    """Leading phase psi_{-1}: antiderivative of the branch i*eta root."""
    rhs = eikonal_rhs(P, anchor, K)
    dpsi = rhs.sqrt(1j * anchor.eta)
    psi = dpsi.antideriv(0.0)
    # concentration requires Re of the s^2 coefficient = Im V'(a)/(4 eta) > 0
    if psi.coeffs[2].real <= 0:
        raise DegenerateAnchorError(
            "quadratic phase coefficient has nonpositive real part"
        )
    return psi


def _transport_derivs(dpsi_m1, n):
    """Local series psi_m' for m = 0..n from the leading derivative."""
    rho = (2.0 * dpsi_m1).recip()
    derivs = [dpsi_m1]
    for m in range(-1, n):
        source = derivs[m + 1].deriv()  # psi_m''
        for j in range(0, m + 1):  # pairs j + k = m with j, k >= 0
            source = source - derivs[j + 1] * derivs[m - j + 1]
        derivs.append(rho * source)
    return derivs


def build_transport(psi_m1, n):
    """Transport corrections psi_0 .. psi_n, each with psi_m(0) = 0."""
    derivs = _transport_derivs(psi_m1.deriv(), n)
    return [d.antideriv(0.0) for d in derivs[1:]]


def build_phase(P, anchor, n, K=None):
    """Central phase expansion psi_{-1} .. psi_n at the given anchor."""
    if n < 0:
        raise UsageError("JWKB order must be >= 0")
    if K is None:
        K = default_truncation(n)
    psi_m1 = build_eikonal(P, anchor, K)
    return PhaseExpansion(
        psi=[psi_m1] + build_transport(psi_m1, n), n=n, K=K, anchor=anchor
    )


def _phi_from_derivs(derivs, n, K, rhs):
    """phi_0 .. phi_{2n+2} from the psi_m' series (index m+1 holds psi_m').

    Each transport level consumes one differentiation, so psi_m' is only
    exact up to degree K - 1 - m and phi_j up to degree K - j; the
    coefficients above that are truncation noise and are cut off.
    """
    second = [d.deriv() for d in derivs]
    phis = []
    for j in range(0, 2 * n + 3):
        acc = TruncatedSeries.zero(K)
        if -1 <= j - 2 <= n:
            acc = acc + second[j - 1]
        for m in range(-1, n + 1):
            k = j - 2 - m
            if -1 <= k <= n:
                acc = acc - derivs[m + 1] * derivs[k + 1]
        if j == 0:
            acc = acc + rhs
        valid = max(K - j, 0)
        phis.append(TruncatedSeries(acc.coeffs[: valid + 1]))
    return phis


def phi_cascade(phase, P):
    """Coefficients phi_0 .. phi_{2n+2} of Hf - zf = (sum h^m phi_m) f.

    phi_0 carries the eikonal mismatch -(psi_{-1}')^2 + V_h - z (zero by
    construction up to truncation); phi_1 .. phi_{n+1} vanish by the
    transport recursion; the tail phi_{n+2} .. phi_{2n+2} survives.
    """
    rhs = eikonal_rhs(P, phase.anchor, phase.K)
    dpsi_m1 = rhs.sqrt(1j * phase.anchor.eta)
    derivs = _transport_derivs(dpsi_m1, phase.n)
    return _phi_from_derivs(derivs, phase.n, phase.K, rhs)


# -- piecewise analytic continuation --------------------------------------


@dataclass
class _Segment:
    center: float  # local coordinate s of the expansion point
    dpsi: list  # psi_m' local series, m = -1 .. n
    psi: list  # psi_m local series (antiderivatives with matched constants)
    tail: list  # phi_{n+2} .. phi_{2n+2} local series
    radius_est: float


@dataclass
class PiecewisePhase:
    """Phases continued along the real axis by chained re-expansions."""

    segments: list  # of _Segment, sorted by center
    centers: np.ndarray
    n: int
    K: int
    anchor: Anchor

    @property
    def coverage(self):
        """(s_min, s_max) actually reachable by the continuation."""
        left = self.centers[0] - STEP_FRACTION * self.segments[0].radius_est
        right = self.centers[-1] + STEP_FRACTION * self.segments[-1].radius_est
        return left, right

    def _bucket(self, s):
        idx = np.searchsorted(self.centers, s)
        idx = np.clip(idx, 1, len(self.centers) - 1)
        left_closer = s - self.centers[idx - 1] < self.centers[idx] - s
        return np.where(left_closer, idx - 1, idx)

    def phase_at(self, s):
        """(psi, psi', psi'') of sum_m h^m psi_m at s (scalar or array)."""
        s = np.asarray(s, dtype=float)
        flat = np.atleast_1d(s).ravel()
        idx = self._bucket(flat)
        h = self.anchor.h
        v = np.zeros(flat.shape, dtype=complex)
        d1 = np.zeros_like(v)
        d2 = np.zeros_like(v)
        for seg_i in np.unique(idx):
            seg = self.segments[seg_i]
            sel = idx == seg_i
            t = flat[sel] - seg.center
            for m, ps in enumerate(seg.psi, start=-1):
                w = h**m
                pv, p1, p2 = ps.eval_d2(t)
                v[sel] += w * pv
                d1[sel] += w * p1
                d2[sel] += w * p2
        shape = np.shape(s)
        return v.reshape(shape), d1.reshape(shape), d2.reshape(shape)

    def leading_at(self, s):
        """(psi_{-1}, psi_{-1}') without h weights, for certification."""
        s = np.asarray(s, dtype=float)
        flat = np.atleast_1d(s).ravel()
        idx = self._bucket(flat)
        v = np.zeros(flat.shape, dtype=complex)
        d1 = np.zeros_like(v)
        for seg_i in np.unique(idx):
            seg = self.segments[seg_i]
            sel = idx == seg_i
            t = flat[sel] - seg.center
            v[sel] = seg.psi[0].eval(t)
            d1[sel] = seg.dpsi[0].eval(t)
        shape = np.shape(s)
        return v.reshape(shape), d1.reshape(shape)

    def tail_at(self, s):
        """sum_{m=n+2}^{2n+2} h^m phi_m(s), the interior residual factor."""
        s = np.asarray(s, dtype=float)
        flat = np.atleast_1d(s).ravel()
        idx = self._bucket(flat)
        h = self.anchor.h
        out = np.zeros(flat.shape, dtype=complex)
        for seg_i in np.unique(idx):
            seg = self.segments[seg_i]
            sel = idx == seg_i
            t = flat[sel] - seg.center
            for j, phi in enumerate(seg.tail, start=self.n + 2):
                out[sel] += h**j * phi.eval(t)
        return out.reshape(np.shape(s))


def _make_segment(P, anchor, n, K, center, branch, offsets):
    rhs = eikonal_rhs(P, anchor, K, at=center)
    dpsi_m1 = rhs.sqrt(branch)
    derivs = _transport_derivs(dpsi_m1, n)
    psi = [d.antideriv(c0) for d, c0 in zip(derivs, offsets)]
    phis = _phi_from_derivs(derivs, n, K, rhs)
    radii = [rhs.estimate_radius()] + [d.estimate_radius() for d in derivs]
    r_est = min(radii)
    if not math.isfinite(r_est):
        r_est = 1.0
    return _Segment(
        center=center,
        dpsi=derivs,
        psi=psi,
        tail=phis[n + 2 :],
        radius_est=r_est,
    )


def _march(P, anchor, n, K, first, span, direction):
    """Continue the phase chain from ``first`` out to |s| ~ span."""
    segments = []
    seg = first
    guard = 0
    while guard < MAX_SEGMENTS:
        guard += 1
        step = direction * STEP_FRACTION * seg.radius_est
        center = seg.center + step
        if direction > 0 and center > span:
            break
        if direction < 0 and center < -span:
            break
        if P.domain == HALF_LINE and anchor.a + center <= 1e-12:
            break
        branch = seg.dpsi[0].eval(step)
        offsets = [ps.eval(step) for ps in seg.psi]
        rhs0 = eikonal_rhs(P, anchor, 1, at=center).coeffs[0]
        if abs(rhs0) < 1e-10 * (1.0 + abs(anchor.eta) ** 2):
            break  # a real turning point: stop the continuation here
        root = np.sqrt(rhs0)
        branch = root if abs(root - branch) <= abs(-root - branch) else -root
        try:
            with np.errstate(invalid="ignore", over="ignore"):
                seg = _make_segment(P, anchor, n, K, center, branch, offsets)
        except (UsageError, DegenerateAnchorError):
            break
        if not all(np.isfinite(d.coeffs).all() for d in seg.dpsi):
            break  # coefficient overflow (e.g. near a singular endpoint)
        segments.append(seg)
    return segments


def build_piecewise(P, anchor, n, K=None, span=DEFAULT_SPAN):
    """Phase expansion continued over |s| <~ span around the anchor."""
    if n < 0:
        raise UsageError("JWKB order must be >= 0")
    if K is None:
        K = default_truncation(n)
    first = _make_segment(
        P, anchor, n, K, 0.0, 1j * anchor.eta, [0.0] * (n + 2)
    )
    if first.psi[0].coeffs[2].real <= 0:
        raise DegenerateAnchorError(
            "quadratic phase coefficient has nonpositive real part"
        )
    right = _march(P, anchor, n, K, first, span, +1.0)
    left = _march(P, anchor, n, K, first, span, -1.0)
    segments = list(reversed(left)) + [first] + right
    centers = np.array([s.center for s in segments])
    return PiecewisePhase(
        segments=segments, centers=centers, n=n, K=K, anchor=anchor
    )


# -- cutoff ---------------------------------------------------------------


def _bump_pieces(t):
    """q, q', q'' of q(t) = exp(-1/t) (0 for t <= 0), vectorized."""
    t = np.asarray(t, dtype=float)
    pos = t > 0
    ts = np.where(pos, t, 1.0)
    q = np.where(pos, np.exp(-1.0 / ts), 0.0)
    q1 = q / ts**2 * pos
    q2 = q * (1.0 / ts**4 - 2.0 / ts**3) * pos
    return q, q1, q2


def _transition(t):
    """g, g', g'' of g(t) = q(t) / (q(t) + q(1-t)) on (0, 1)."""
    qa, qa1, qa2 = _bump_pieces(t)
    qb, qb1, qb2 = _bump_pieces(1.0 - t)
    b1 = -qb1  # d/dt q(1-t)
    b2 = qb2
    d = qa + qb
    d1 = qa1 + b1
    w = qa1 * qb - qa * b1
    w1 = qa2 * qb - qa * b2
    g = qa / d
    g1 = w / d**2
    g2 = (w1 * d - 2.0 * w * d1) / d**3
    return g, g1, g2


def cutoff_eval(delta, s):
    """(xi, xi', xi'') of the smooth bump cutoff at local coordinate s.

    xi = 1 for |s| < delta/2, xi = 0 for |s| > delta, and in between
    xi(s) = g(2 - 2|s|/delta) with the classical exp(-1/t) transition;
    all derivatives vanish at the seams.
    """
    if delta <= 0:
        raise UsageError("delta must be > 0")
    s = np.asarray(s, dtype=float)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    xi = np.ones_like(s)
    xi1 = np.zeros_like(s)
    xi2 = np.zeros_like(s)
    absr = np.abs(s)
    xi[absr >= delta] = 0.0
    mid = (absr > delta / 2) & (absr < delta)
    if mid.any():
        t = 2.0 - 2.0 * absr[mid] / delta
        g, g1, g2 = _transition(t)
        sgn = np.sign(s[mid])
        xi[mid] = g
        xi1[mid] = g1 * (-2.0 * sgn / delta)
        xi2[mid] = g2 * (4.0 / delta**2)
    if scalar:
        return xi[0], xi1[0], xi2[0]
    return xi, xi1, xi2


# -- quasimode assembly ---------------------------------------------------


@dataclass
class Quasimode:
    """A continued phase with certified cutoff radius and concentration rate."""

    phase: PiecewisePhase
    central: PhaseExpansion
    delta: float
    gamma: float
    beta: float  # certified bound on |rho| over [-delta, delta]

    def values(self, s):
        """f~(a + s) = cutoff(s) * exp(-psi(s)) on the local grid s."""
        s = np.asarray(s, dtype=float)
        xi, _, _ = cutoff_eval(self.delta, np.atleast_1d(s))
        out = np.zeros(xi.shape, dtype=complex)
        inside = xi > 0
        if inside.any():
            v, _, _ = self.phase.phase_at(np.atleast_1d(s)[inside])
            out[inside] = xi[inside] * np.exp(-v)
        return out.reshape(np.shape(s))


def select_delta(pw):
    """Choose the cutoff radius and certify the concentration rate.

    On a fine grid over the reach of the analytic continuation the
    admissible zone is the largest symmetric interval on which
    Re psi_{-1}(s) > 0 (so gamma = min Re psi_{-1}/s^2 is positive) and
    |rho| = |1/(2 psi_{-1}')| stays bounded.  Within that zone delta is
    picked to maximize the smallest value of Re psi_{-1} on the cutoff
    seam delta/2 <= |s| <= delta, which is what controls the
    exp(-Re psi_{-1}/h) suppression of the cutoff commutator.  Returns
    (delta, gamma, beta).
    """
    lo, hi = pw.coverage
    span = 0.98 * min(-lo, hi)
    if span <= 0:
        raise DegenerateAnchorError("analytic continuation has no reach")
    half = 2048
    x = span * np.arange(1, half + 1) / half
    s = np.concatenate([-x[::-1], x])
    v, d1 = pw.leading_at(s)
    re = v.real
    q = re / s**2
    dp = np.abs(2.0 * d1)
    # symmetric prefix condition: both sides admissible out to index k
    q_ok = np.minimum(q[half:], q[half - 1 :: -1]) > 0
    rho_ok = np.minimum(dp[half:], dp[half - 1 :: -1]) > 1e-12
    ok = np.logical_and.accumulate(q_ok & rho_ok)
    if not ok[0]:
        raise DegenerateAnchorError("no admissible cutoff radius")
    kmax = int(np.argmin(ok)) if not ok.all() else half
    re_sym = np.minimum(re[half:], re[half - 1 :: -1])
    best_delta, best_seam = None, -1.0
    for k in range(1, kmax):
        seam = re_sym[(k + 1) // 2 : k + 1].min()
        if seam > best_seam:
            best_seam, best_delta = seam, x[k]
    delta = float(best_delta)
    inner = x[: int(np.searchsorted(x, delta, side="right"))]
    sg = np.concatenate([-inner[::-1], inner])
    vg, dg = pw.leading_at(sg)
    qg = vg.real / sg**2
    dpg = np.abs(2.0 * dg)
    if qg.min() <= 0 or dpg.min() <= 1e-12:
        raise DegenerateAnchorError("cutoff certification failed")
    return delta, float(qg.min()), float(1.0 / dpg.min())


def build_quasimode(P, anchor, n, K=None, span=DEFAULT_SPAN):
    """Full construction: continued phases plus certified (delta, gamma)."""
    pw = build_piecewise(P, anchor, n, K, span)
    central = PhaseExpansion(
        psi=pw.segments[pw.centers.searchsorted(0.0)].psi,
        n=pw.n,
        K=pw.K,
        anchor=anchor,
    )
    delta, gamma, beta = select_delta(pw)
    return Quasimode(
        phase=pw, central=central, delta=delta, gamma=gamma, beta=beta
    )


# -- residual quadrature --------------------------------------------------


@dataclass
class Certificate:
    """A point z with a certified resolvent-norm lower bound 1/r."""

    z: complex
    h: float
    n: int
    r: float
    lower_bound: float
    delta: float
    gamma: float
    panels: int
    tail_magnitudes: list
    warnings: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    quasimode: Quasimode | None = field(default=None, repr=False)

    def to_dict(self):
        return {
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "h": self.h,
            "n": self.n,
            "r": self.r,
            "lower_bound": self.lower_bound,
            "delta": self.delta,
            "gamma": self.gamma,
            "panels": self.panels,
            "tail_magnitudes": list(self.tail_magnitudes),
            "warnings": list(self.warnings),
        }


def residual_pointwise(P, Q, s):
    """(Hf~ - z f~)(a+s) and f~(a+s) on the local grid s.

    The potential is evaluated exactly (not through its Taylor series),
    so series truncation error enters only through the phase.
    """
    anchor = Q.phase.anchor
    h, a, z = anchor.h, anchor.a, anchor.z
    s = np.asarray(s, dtype=float)
    xi, xi1, xi2 = cutoff_eval(Q.delta, np.atleast_1d(s))
    res = np.zeros(xi.shape, dtype=complex)
    f = np.zeros_like(res)
    inside = xi > 0
    if inside.any():
        si = np.atleast_1d(s)[inside]
        v, d1, d2 = Q.phase.phase_at(si)
        vh = P.eval_many(h, a + si)
        e = np.exp(-v)
        op = (
            -(h * h)
            * (xi2[inside] - 2.0 * xi1[inside] * d1 + xi[inside] * (d1 * d1 - d2))
            + (vh - z) * xi[inside]
        )
        res[inside] = op * e
        f[inside] = xi[inside] * e
    return res.reshape(np.shape(s)), f.reshape(np.shape(s))


def _panel_quadrature(P, Q, panels):
    """Integrals of |residual|^2, |f~|^2 and the cutoff-commutator part."""
    delta = Q.delta
    nodes, weights = np.polynomial.legendre.leggauss(PANEL_NODES)
    edges = np.linspace(-delta, delta, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    s = (mid[:, None] + half * nodes[None, :]).ravel()
    w = np.broadcast_to(half * weights[None, :], (panels, PANEL_NODES)).ravel()
    res, f = residual_pointwise(P, Q, s)
    # cutoff commutator alone: -h^2 (xi'' - 2 xi' psi') exp(-psi)
    h = Q.phase.anchor.h
    xi, xi1, xi2 = cutoff_eval(delta, s)
    comm = np.zeros_like(res)
    seam = (xi1 != 0) | ((xi2 != 0) & (xi > 0))
    if seam.any():
        v, d1, _ = Q.phase.phase_at(s[seam])
        comm[seam] = -(h * h) * (xi2[seam] - 2.0 * xi1[seam] * d1) * np.exp(-v)
    return (
        float(np.sum(w * np.abs(res) ** 2)),
        float(np.sum(w * np.abs(f) ** 2)),
        float(np.sum(w * np.abs(comm) ** 2)),
    )


def residual_ratio(P, Q, allow_large_h=False):
    """Certify a resolvent-norm lower bound at the quasimode's energy.

    Computes r = ||Hf~ - z f~|| / ||f~|| by composite Gauss-Legendre
    quadrature (16 nodes per panel, panels doubled until the relative
    change drops below 1e-8) and returns a :class:`Certificate` with
    lower_bound = 1/r.

    The construction's error analysis assumes h <= delta^2; by default
    larger h is rejected, but sweeps may pass ``allow_large_h=True`` to
    proceed with an ``h_above_delta_sq`` warning instead.
    """
    anchor = Q.phase.anchor
    h = anchor.h
    warnings = list(anchor.warnings)
    if h > Q.delta**2:
        if not allow_large_h:
            raise UsageError(
                f"h = {h} exceeds delta^2 = {Q.delta**2:.3e}; "
                "pass allow_large_h=True to override"
            )
        warnings.append("h_above_delta_sq")

    panels = max(64, math.ceil(8.0 * Q.delta / math.sqrt(h)))
    prev = None
    cur = None
    for _ in range(MAX_DOUBLINGS + 1):
        cur = _panel_quadrature(P, Q, panels)
        if prev is not None:
            ok = all(
                abs(c - p) <= QUAD_RTOL * max(abs(c), 1e-300)
                for c, p in zip(cur[:2], prev[:2])
            )
            if ok:
                break
        prev = cur
        panels *= 2
    else:
        raise AccuracyError(
            "quadrature did not converge", estimates=(prev, cur)
        )

    num_sq, den_sq, comm_sq = cur
    r = math.sqrt(num_sq / den_sq)
    tails = [
        float(np.max(np.abs(p.coeffs)))
        for p in Q.phase.segments[Q.phase.centers.searchsorted(0.0)].tail
    ]
    return Certificate(
        z=anchor.z,
        h=h,
        n=Q.phase.n,
        r=r,
        lower_bound=1.0 / r,
        delta=Q.delta,
        gamma=Q.gamma,
        panels=panels,
        tail_magnitudes=tails,
        warnings=warnings,
        diagnostics={
            "beta": Q.beta,
            "norm_f_sq": den_sq,
            "residual_sq": num_sq,
            "cutoff_term_sq": comm_sq,
            "gamma_grid": GAMMA_GRID,
        },
        quasimode=Q,
    )


def certify(P, anchor, n, K=None, allow_large_h=False, span=DEFAULT_SPAN):
    """Anchor -> certificate in one call."""
    Q = build_quasimode(P, anchor, n, K, span)
    return residual_ratio(P, Q, allow_large_h=allow_large_h)


def sweep_h(P, a, eta, n, h_list, K=None):
    """Certificates over an h grid at fixed (a, eta), plus the slope fit.

    Returns (certs, slope, fit_residual) where slope is the least-squares
    slope of log r against log h.  The expected law is r ~ h^(n+2).
    """
    from .potential import make_anchor

    h_list = list(h_list)
    if len(h_list) < 3:
        raise UsageError("h sweep needs at least 3 values")
    certs = []
    for h in h_list:
        anchor = make_anchor(P, h, a, eta)
        certs.append(certify(P, anchor, n, K, allow_large_h=True))
    logs = np.log([c.h for c in certs])
    logr = np.log([c.r for c in certs])
    (slope, _), res, *_ = np.polyfit(logs, logr, 1, full=True)
    fit_residual = float(res[0]) if len(res) else 0.0
    return certs, float(slope), fit_residual
