"""Local models and numerical detection of complex points on
parametrized surfaces in C^2.

A point of an embedded real surface is *complex* when its tangent plane
is a complex line of the ambient C^2.  For a parametrized patch
F(u, v) this happens exactly where

    delta(u, v) = det_C( dF/du, dF/dv )

vanishes (the two partials become complex-linearly dependent), so
detection is zero-finding for delta: winding-number tests on grid
cells, quadtree refinement, and a Newton polish.

At each zero the surface is rewritten as a graph over its tangent line
in unitary adapted coordinates and the quadratic jet

    w = A z^2 + B z zbar + C zbar^2 + O(|z|^3)

is fitted by least squares on a 5x5 stencil.  The A term is absorbed by
the holomorphic substitution w -> w - A z^2, after which

    alpha = |B| / (2 |C|)    (infinite for C = 0, degenerate for B = C = 0)

is the holomorphic invariant of the point: alpha > 1 elliptic, < 1
hyperbolic, = 1 parabolic.  On the model form
w = alpha z zbar + (z^2 + zbar^2)/2 this normalization returns alpha
itself.

Signs and indices (oriented surfaces): at a complex point F_v = lambda
F_u over C, and the point is positive when Im(lambda) > 0, i.e. when
the parametrization orients the tangent plane like the complex line it
spans.  The reported ``winding_index`` is the winding of delta around
the zero along a loop oriented by that complex line - equivalently the
parameter-space winding times the sign - which makes it +1 at elliptic
and -1 at hyperbolic points regardless of how the surface is oriented,
and makes the indices sum to e - h.

Scanning is deterministic: results are a pure function of the surface,
the grid and the tolerances (tiles are processed in a fixed order, and
the scan grid is shifted by a fixed sub-cell offset so that symmetric
surfaces do not park zeros on cell boundaries).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ambient import Check

__all__ = [
    "Jet2",
    "PointType",
    "Tolerances",
    "Chart",
    "ParametrizedSurface",
    "PointReport",
    "SurveyReport",
    "ImmersionFailure",
    "UnresolvedCluster",
    "GenericityFailure",
    "bishop_alpha",
    "classify",
    "find_complex_points",
    "survey",
    "builtin_surface",
    "BUILTIN_SURFACES",
    "flat_torus",
    "round_sphere",
    "wrinkled_sphere",
    "graph_normal_form",
]


class ImmersionFailure(Exception):
    """The two partial derivatives are real-linearly dependent somewhere."""


class UnresolvedCluster(Exception):
    """Zeros of the detector did not separate at maximal refinement."""


class GenericityFailure(Exception):
    """A parabolic or degenerate point makes the survey counts meaningless."""


@dataclass(frozen=True)
class Jet2:
    """Quadratic jet w = a z^2 + b z zbar + c zbar^2 in adapted coordinates."""

    a: complex
    b: complex
    c: complex


class PointType(enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Tolerances:
    zero_rel: float = 1e-9        # relative floor below which a modulus counts as zero
    parabolic_band: float = 1e-6  # |alpha - 1| within the band reports parabolic
    max_refine: int = 12          # quadtree depth per candidate cell
    jet_step: float = 1e-3        # stencil radius in C^2 for the jet fit
    newton_steps: int = 30


DEFAULT_TOLERANCES = Tolerances()


def bishop_alpha(jet: Jet2, zero_rel: float = 1e-9) -> float | None:
    """The holomorphic invariant of a complex point from its quadratic jet.

    The a-coefficient is removed by a holomorphic coordinate change and
    plays no role.  Returns ``math.inf`` when c vanishes (the
    w = z zbar model) and ``None`` for the degenerate jet b = c = 0.
    """
    b, c2 = abs(jet.b), 2.0 * abs(jet.c)
    scale = max(b, c2)
    if scale == 0.0:
        return None
    if c2 <= zero_rel * scale:
        return math.inf
    if b <= zero_rel * scale:
        return 0.0
    return b / c2


def classify(alpha: float | None, parabolic_band: float = 1e-6) -> PointType:
    """alpha > 1 elliptic, alpha < 1 hyperbolic, alpha = 1 parabolic
    (up to the tolerance band), no alpha degenerate."""
    if alpha is None:
        return PointType.DEGENERATE
    if math.isinf(alpha):
        return PointType.ELLIPTIC
    if abs(alpha - 1.0) <= parabolic_band:
        return PointType.PARABOLIC
    return PointType.ELLIPTIC if alpha > 1.0 else PointType.HYPERBOLIC


# --- surfaces -------------------------------------------------------------------


@dataclass
class Chart:
    """One parameter patch of a surface.

    ``evaluate`` maps (u, v) to a point (z, w) of C^2 and must accept
    numpy arrays elementwise; it must tolerate arguments up to one grid
    cell outside the nominal rectangle (the scan pads for offsets and
    finite differences).  ``d_du`` / ``d_dv`` are optional analytic
    partials with the same calling convention; when absent the scan
    falls back to central differences with the grid spacing as step
    (error O(h^2)).  ``owns`` is the chart's region of responsibility:
    when several charts cover the surface the predicates must partition
    it, so each complex point is reported exactly once.
    """

    evaluate: Callable
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    periodic_u: bool = False
    periodic_v: bool = False
    d_du: Callable | None = None
    d_dv: Callable | None = None
    owns: Callable | None = None
    label: str = ""


@dataclass
class ParametrizedSurface:
    """A surface presented by charts, with the topology data the count
    formulas need supplied by the caller (euler_char, and the normal
    Euler number of the embedding, zero for all builtin surfaces)."""

    label: str
    charts: tuple[Chart, ...]
    orientable: bool = True
    closed: bool = True
    euler_char: int | None = None
    normal_euler: int | None = None


@dataclass(frozen=True)
class PointReport:
    chart: int
    location: tuple[float, float]
    position: tuple[complex, complex]
    winding_index: int
    sign: int | None
    alpha: float | None
    ptype: PointType


@dataclass(frozen=True)
class SurveyReport:
    points: tuple[PointReport, ...]
    e_plus: int
    e_minus: int
    h_plus: int
    h_minus: int
    i_total: int
    i_plus: int | None
    i_minus: int | None
    checks: tuple[Check, ...]

    @property
    def e_count(self) -> int:
        return self.e_plus + self.e_minus

    @property
    def h_count(self) -> int:
        return self.h_plus + self.h_minus

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


# fixed sub-cell shift of the scan grid (1/pi): keeps zeros of symmetric
# surfaces off cell corners and edges
_GRID_SHIFT = 0.3183098861837907
_TWO_PI = 2.0 * math.pi


def _wrap(angles):
    return (angles + math.pi) % _TWO_PI - math.pi


def _as_complex_pair(raw):
    z, w = raw
    return np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)


class _ChartScan:
    """Scalar evaluation helpers bound to one chart."""

    def __init__(self, chart: Chart, hu: float, hv: float):
        self.chart = chart
        self.fd_step = min(hu, hv)  # central-difference step = grid spacing

    def point(self, u: float, v: float) -> tuple[complex, complex]:
        z, w = self.chart.evaluate(u, v)
        return complex(z), complex(w)

    def partials(self, u: float, v: float):
        c = self.chart
        if c.d_du is not None and c.d_dv is not None:
            zu, wu = c.d_du(u, v)
            zv, wv = c.d_dv(u, v)
            return (complex(zu), complex(wu)), (complex(zv), complex(wv))
        h = self.fd_step
        zp, wp = self.point(u + h, v)
        zm, wm = self.point(u - h, v)
        du = ((zp - zm) / (2 * h), (wp - wm) / (2 * h))
        zp, wp = self.point(u, v + h)
        zm, wm = self.point(u, v - h)
        dv = ((zp - zm) / (2 * h), (wp - wm) / (2 * h))
        return du, dv

    def delta(self, u: float, v: float) -> complex:
        (zu, wu), (zv, wv) = self.partials(u, v)
        return zu * wv - wu * zv


def _delta_on(chart: Chart, us, vs, hu: float, hv: float):
    """delta and the partials on an axis lattice, vectorized."""
    uu, vv = np.meshgrid(us, vs, indexing="ij")
    if chart.d_du is not None and chart.d_dv is not None:
        zu, wu = _as_complex_pair(chart.d_du(uu, vv))
        zv, wv = _as_complex_pair(chart.d_dv(uu, vv))
    else:
        zp, wp = _as_complex_pair(chart.evaluate(uu + hu, vv))
        zm, wm = _as_complex_pair(chart.evaluate(uu - hu, vv))
        zu, wu = (zp - zm) / (2 * hu), (wp - wm) / (2 * hu)
        zp, wp = _as_complex_pair(chart.evaluate(uu, vv + hv))
        zm, wm = _as_complex_pair(chart.evaluate(uu, vv - hv))
        zv, wv = (zp - zm) / (2 * hv), (wp - wm) / (2 * hv)
    return (zu, wu, zv, wv), zu * wv - wu * zv


def _grid_delta(chart: Chart, grid: int):
    """delta on the (grid+1)^2 node lattice plus the two half-offset edge
    lattices (the cell winding test samples corners and edge midpoints)."""
    (u0, u1), (v0, v1) = chart.u_range, chart.v_range
    hu, hv = (u1 - u0) / grid, (v1 - v0) / grid
    us = u0 + _GRID_SHIFT * hu + hu * np.arange(grid + 1)
    vs = v0 + _GRID_SHIFT * hv + hv * np.arange(grid + 1)
    partials, delta = _delta_on(chart, us, vs, hu, hv)
    _, delta_mu = _delta_on(chart, us[:-1] + hu / 2, vs, hu, hv)
    _, delta_mv = _delta_on(chart, us, vs[:-1] + hv / 2, hu, hv)
    if chart.periodic_u:
        delta[-1, :] = delta[0, :]
        delta_mv[-1, :] = delta_mv[0, :]
    if chart.periodic_v:
        delta[:, -1] = delta[:, 0]
        delta_mu[:, -1] = delta_mu[:, 0]
    return us, vs, partials, delta, delta_mu, delta_mv


def _check_immersion(chart_index: int, us, vs, partials) -> None:
    zu, wu, zv, wv = partials
    na = np.abs(zu) ** 2 + np.abs(wu) ** 2
    nb = np.abs(zv) ** 2 + np.abs(wv) ** 2
    rp = (zu * np.conj(zv) + wu * np.conj(wv)).real
    gram = na * nb - rp * rp
    bad = (na * nb == 0.0) | (gram < 1e-12 * na * nb)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise ImmersionFailure(
            f"partial derivatives are real-linearly dependent near "
            f"chart {chart_index} parameter ({us[i]:.6g}, {vs[j]:.6g})"
        )


def _candidate_cells(delta, delta_mu, delta_mv, zero_floor):
    """Cells whose boundary phases wind, plus cells touching a near-zero node.

    The boundary is sampled at the four corners and four edge midpoints,
    which resolves windings up to +-2 (phase steps stay below pi).
    """
    ph = np.angle(delta)
    pmu = np.angle(delta_mu)  # (n, n+1): midpoints of u-direction edges
    pmv = np.angle(delta_mv)  # (n+1, n): midpoints of v-direction edges
    bottom = _wrap(pmu[:, :-1] - ph[:-1, :-1]) + _wrap(ph[1:, :-1] - pmu[:, :-1])
    right = _wrap(pmv[1:, :] - ph[1:, :-1]) + _wrap(ph[1:, 1:] - pmv[1:, :])
    top = _wrap(pmu[:, 1:] - ph[1:, 1:]) + _wrap(ph[:-1, 1:] - pmu[:, 1:])
    left = _wrap(pmv[:-1, :] - ph[:-1, 1:]) + _wrap(ph[:-1, :-1] - pmv[:-1, :])
    winding = np.rint((bottom + right + top + left) / _TWO_PI).astype(int)
    cells = {(int(i), int(j)) for i, j in np.argwhere(winding != 0)}
    small = np.abs(delta) < zero_floor
    n = delta.shape[0] - 1
    for i, j in np.argwhere(small):
        for ci in (int(i) - 1, int(i)):
            for cj in (int(j) - 1, int(j)):
                if 0 <= ci < n and 0 <= cj < n:
                    cells.add((ci, cj))
    return sorted(cells)


def _boundary_winding(scan: _ChartScan, rect) -> int:
    """Winding of delta along the rectangle boundary, with adaptive phase
    sampling (every consecutive step below pi/2).

    Tiny values still carry a meaningful phase; only an exact zero on the
    boundary is unresolvable.  Noise-corrupted phases fail to settle and
    exhaust the sampling budget instead.
    """
    ua, ub, va, vb = rect
    corners = [(ua, va), (ub, va), (ub, vb), (ua, vb), (ua, va)]

    def probe(p):
        d = scan.delta(*p)
        if d == 0:
            raise UnresolvedCluster(
                f"detector vanishes on a refinement boundary near ({p[0]:.6g}, {p[1]:.6g})"
            )
        return math.atan2(d.imag, d.real)

    total = 0.0
    budget = 1 << 14
    for (p, q) in zip(corners[:-1], corners[1:]):
        segments = [(p, probe(p), q, probe(q))]
        while segments:
            a, pa, b, pb = segments.pop()
            step = _wrap(pb - pa)
            if abs(step) <= math.pi / 2:
                total += step
                continue
            budget -= 1
            if budget <= 0:
                raise UnresolvedCluster("phase along a cell boundary failed to settle")
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            pm = probe(mid)
            segments.append((mid, pm, b, pb))
            segments.append((a, pa, mid, pm))
    return round(total / _TWO_PI)


# asymmetric split keeps subdivision lines off symmetric zero positions
_SPLIT = 0.511716


def _localize(scan: _ChartScan, rect, winding: int, tol: Tolerances):
    """Quadtree descent separating the zeros inside a winding cell."""
    out = []
    stack = [(rect, winding, 0)]
    while stack:
        (ua, ub, va, vb), w, depth = stack.pop()
        if depth >= tol.max_refine:
            if abs(w) != 1:
                raise UnresolvedCluster(
                    f"winding {w} not separated into simple zeros at depth {tol.max_refine} "
                    f"near ({(ua + ub) / 2:.6g}, {(va + vb) / 2:.6g})"
                )
            out.append(((ua + ub) / 2, (va + vb) / 2, w))
            continue
        um = ua + _SPLIT * (ub - ua)
        vm = va + _SPLIT * (vb - va)
        children = [
            (ua, um, va, vm),
            (um, ub, va, vm),
            (ua, um, vm, vb),
            (um, ub, vm, vb),
        ]
        live = []
        for child in children:
            wc = _boundary_winding(scan, child)
            if wc != 0:
                live.append((child, wc))
        if not live:
            # winding judged zero at the finer look: false positive
            continue
        for child, wc in live:
            stack.append((child, wc, depth + 1))
    return out


def _newton_polish(scan: _ChartScan, u: float, v: float, cell: float, stop: float, tol: Tolerances):
    """Drive delta to zero with damped 2x2 Newton steps; falls back to the
    quadtree location if the iteration wanders."""
    u0, v0 = u, v
    h = max(cell * 1e-3, 1e-12)
    for _ in range(tol.newton_steps):
        d = scan.delta(u, v)
        if abs(d) <= stop:
            break
        du_ = (scan.delta(u + h, v) - scan.delta(u - h, v)) / (2 * h)
        dv_ = (scan.delta(u, v + h) - scan.delta(u, v - h)) / (2 * h)
        det = du_.real * dv_.imag - dv_.real * du_.imag
        if det == 0.0:
            break
        su = (-d.real * dv_.imag + dv_.real * d.imag) / det
        sv = (-du_.real * d.imag + d.real * du_.imag) / det
        norm = math.hypot(su, sv)
        if norm > cell:
            su, sv = su * cell / norm, sv * cell / norm
        u, v = u + su, v + sv
        if math.hypot(u - u0, v - v0) > 2 * cell:
            return u0, v0
        if norm < 1e-15:
            break
    return u, v


def _sign_at(partials) -> int:
    """Sign of the complex point: +1 when the parametrization orientation
    agrees with the complex orientation of the tangent line."""
    (zu, wu), (zv, wv) = partials
    lam = zv / zu if abs(zu) >= abs(wu) else wv / wu
    if lam.imag == 0.0:
        raise ImmersionFailure("tangent vectors are real-dependent at a detected point")
    return 1 if lam.imag > 0 else -1


def _jet_at(scan: _ChartScan, u: float, v: float, tol: Tolerances) -> Jet2:
    """Least-squares quadratic jet in unitary adapted coordinates, from a
    5x5 parameter stencil around the point."""
    (zu, wu), _ = scan.partials(u, v)
    norm = math.sqrt(abs(zu) ** 2 + abs(wu) ** 2)
    t0, t1 = zu / norm, wu / norm          # unit tangent direction, complex span
    n0, n1 = -np.conj(t1), np.conj(t0)     # Hermitian-orthogonal unit normal
    h = tol.jet_step / norm
    offsets = np.arange(-2, 3)
    uu, vv = np.meshgrid(u + h * offsets, v + h * offsets, indexing="ij")
    zz, ww = _as_complex_pair(scan.chart.evaluate(uu, vv))
    z0, w0 = scan.point(u, v)
    qz, qw = (zz - z0).ravel(), (ww - w0).ravel()
    zp = qz * np.conj(t0) + qw * np.conj(t1)   # graph coordinate on the tangent line
    wp = qz * np.conj(n0) + qw * np.conj(n1)   # height over it
    rho = np.max(np.abs(zp))
    zs = zp / rho
    design = np.stack(
        [np.ones_like(zs), zs, np.conj(zs), zs * zs, zs * np.conj(zs), np.conj(zs) ** 2],
        axis=1,
    )
    coeffs, *_ = np.linalg.lstsq(design, wp, rcond=None)
    a, b, c = coeffs[3] / rho**2, coeffs[4] / rho**2, coeffs[5] / rho**2
    return Jet2(complex(a), complex(b), complex(c))


def _wrap_into(x: float, lo: float, hi: float, periodic: bool) -> float:
    if not periodic:
        return x
    return lo + (x - lo) % (hi - lo)


def find_complex_points(
    surface: ParametrizedSurface,
    grid: int = 256,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[PointReport]:
    """Locate and classify all complex points of the surface.

    Scans every chart on a (grid x grid) cell lattice, keeps each zero of
    the detector that the chart owns, and reports location, winding
    index, sign (oriented surfaces), alpha and type.  Deterministic for
    fixed inputs.
    """
    if grid < 8:
        raise ValueError("grid must be at least 8")
    reports: list[PointReport] = []
    for chart_index, chart in enumerate(surface.charts):
        us, vs, partial_grids, delta, delta_mu, delta_mv = _grid_delta(chart, grid)
        _check_immersion(chart_index, us, vs, partial_grids)
        scale = float(np.median(np.abs(delta)))
        if scale == 0.0:
            raise UnresolvedCluster(
                f"detector vanishes on half the grid of chart {chart_index}; "
                "zeros are not isolated"
            )
        zero_floor = tol.zero_rel * scale
        hu, hv = us[1] - us[0], vs[1] - vs[0]
        scan = _ChartScan(chart, hu, hv)
        cell = min(hu, hv)
        located: list[tuple[float, float, int]] = []
        for i, j in _candidate_cells(delta, delta_mu, delta_mv, zero_floor):
            rect = (us[i], us[i + 1], vs[j], vs[j + 1])
            w0 = _boundary_winding(scan, rect)
            if w0 == 0:
                continue
            located.extend(_localize(scan, rect, w0, tol))
        merged: list[tuple[float, float, int]] = []
        for u, v, w in sorted(located):
            if any(math.hypot(u - mu, v - mv) < 0.75 * cell for mu, mv, _ in merged):
                continue
            merged.append((u, v, w))
        stop = 1e-13 * scale
        for u, v, w in merged:
            u, v = _newton_polish(scan, u, v, cell, stop, tol)
            u = _wrap_into(u, *chart.u_range, chart.periodic_u)
            v = _wrap_into(v, *chart.v_range, chart.periodic_v)
            if chart.owns is not None and not chart.owns(u, v):
                continue
            partials = scan.partials(u, v)
            sign = _sign_at(partials) if surface.orientable else None
            alpha = bishop_alpha(_jet_at(scan, u, v, tol), tol.zero_rel)
            ptype = classify(alpha, tol.parabolic_band)
            index = w * sign if sign is not None else w
            reports.append(
                PointReport(
                    chart=chart_index,
                    location=(u, v),
                    position=scan.point(u, v),
                    winding_index=index,
                    sign=sign,
                    alpha=alpha,
                    ptype=ptype,
                )
            )
    reports.sort(key=lambda r: (r.chart, round(r.location[0], 9), round(r.location[1], 9)))
    return reports


def survey(
    surface: ParametrizedSurface,
    grid: int = 256,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SurveyReport:
    """Scan a closed surface, tally complex points by type and sign, and
    cross-check the counts against the topological formulas."""
    if not surface.closed:
        raise ValueError(f"survey needs a closed surface; {surface.label!r} has boundary")
    if surface.euler_char is None:
        raise ValueError("survey needs the surface Euler characteristic")
    if not surface.orientable:
        raise ValueError("signed tallies need an oriented surface (none of the v1 catalog is nonorientable)")
    points = find_complex_points(surface, grid, tol)
    bad = [p for p in points if p.ptype in (PointType.PARABOLIC, PointType.DEGENERATE)]
    if bad:
        raise GenericityFailure(
            f"nongeneric complex point ({bad[0].ptype.value}) at chart {bad[0].chart} "
            f"{bad[0].location}; perturb the surface"
        )
    e_plus = sum(1 for p in points if p.ptype is PointType.ELLIPTIC and p.sign > 0)
    e_minus = sum(1 for p in points if p.ptype is PointType.ELLIPTIC and p.sign < 0)
    h_plus = sum(1 for p in points if p.ptype is PointType.HYPERBOLIC and p.sign > 0)
    h_minus = sum(1 for p in points if p.ptype is PointType.HYPERBOLIC and p.sign < 0)
    i_total = e_plus + e_minus - h_plus - h_minus
    i_plus, i_minus = e_plus - h_plus, e_minus - h_minus
    chi = surface.euler_char
    chi_normal = surface.normal_euler if surface.normal_euler is not None else 0
    checks = [
        Check("count formula I = chi + chi(NS)", chi + chi_normal, i_total),
        Check("signed count 2 I+ = chi + chi(NS)", chi + chi_normal, 2 * i_plus),
        Check("signed count 2 I- = chi + chi(NS)", chi + chi_normal, 2 * i_minus),
        Check("winding indices sum to e - h",
              e_plus + e_minus - h_plus - h_minus,
              sum(p.winding_index for p in points)),
    ]
    return SurveyReport(
        points=tuple(points),
        e_plus=e_plus,
        e_minus=e_minus,
        h_plus=h_plus,
        h_minus=h_minus,
        i_total=i_total,
        i_plus=i_plus,
        i_minus=i_minus,
        checks=tuple(checks),
    )


# --- builtin surfaces -------------------------------------------------------------


def flat_torus() -> ParametrizedSurface:
    """(e^{iu}, e^{iv}): totally real, delta = -e^{i(u+v)} never vanishes."""

    def ev(u, v):
        return np.exp(1j * u), np.exp(1j * v)

    def d_du(u, v):
        return 1j * np.exp(1j * u), 0j * u

    def d_dv(u, v):
        return 0j * u, 1j * np.exp(1j * v)

    chart = Chart(ev, (0.0, _TWO_PI), (0.0, _TWO_PI), True, True, d_du, d_dv, None, "torus")
    return ParametrizedSurface("flat-torus", (chart,), True, True, 0, 0)


def _stereo_chart(south: bool, eps: float) -> Chart:
    """Stereographic chart of the unit sphere in R^3 = C x R c C^2, with an
    optional height wrinkle w -> w + eps * Re(z^2).

    The south chart is the north one precomposed with the holomorphic
    transition 1/zeta, so the two charts orient the sphere consistently.
    """

    def ev(u, v):
        s = u * u + v * v
        d = 1.0 + s
        zeta = u + 1j * v
        z = 2.0 * (np.conj(zeta) if south else zeta) / d
        w = ((s - 1.0) if south else (1.0 - s)) / d
        if eps:
            w = w + eps * (z * z).real
        return z, w + 0j

    def d_du(u, v):
        s = u * u + v * v
        d = 1.0 + s
        zeta = u + 1j * v
        if south:
            z = 2.0 * np.conj(zeta) / d
            zu = 2.0 * (d - 2.0 * u * np.conj(zeta)) / d**2
            wu = 4.0 * u / d**2
        else:
            z = 2.0 * zeta / d
            zu = 2.0 * (d - 2.0 * u * zeta) / d**2
            wu = -4.0 * u / d**2
        if eps:
            wu = wu + eps * 2.0 * (z * zu).real
        return zu, wu + 0j

    def d_dv(u, v):
        s = u * u + v * v
        d = 1.0 + s
        zeta = u + 1j * v
        if south:
            z = 2.0 * np.conj(zeta) / d
            zv = 2.0 * (-1j * d - 2.0 * v * np.conj(zeta)) / d**2
            wv = 4.0 * v / d**2
        else:
            z = 2.0 * zeta / d
            zv = 2.0 * (1j * d - 2.0 * v * zeta) / d**2
            wv = -4.0 * v / d**2
        if eps:
            wv = wv + eps * 2.0 * (z * zv).real
        return zv, wv + 0j

    if south:
        owns = lambda u, v: u * u + v * v < 1.0      # open south hemisphere
    else:
        owns = lambda u, v: u * u + v * v <= 1.0     # closed north hemisphere
    label = "south" if south else "north"
    return Chart(ev, (-1.15, 1.15), (-1.15, 1.15), False, False, d_du, d_dv, owns, label)


def round_sphere() -> ParametrizedSurface:
    """The unit sphere x^2 + y^2 + t^2 = 1 in (z, w) = (x + iy, t):
    complex points exactly at the two poles, both elliptic."""
    charts = (_stereo_chart(False, 0.0), _stereo_chart(True, 0.0))
    return ParametrizedSurface("round-sphere", charts, True, True, 2, 0)


def wrinkled_sphere(eps: float = 0.6) -> ParametrizedSurface:
    """The round sphere pushed by the height diffeomorphism
    t -> t + eps (x^2 - y^2).  For eps > 1/2 four extra complex points
    appear near the equator (two elliptic pairs) while the poles turn
    hyperbolic; e - h stays 2."""
    charts = (_stereo_chart(False, eps), _stereo_chart(True, eps))
    return ParametrizedSurface("wrinkled-sphere", charts, True, True, 2, 0)


def graph_normal_form(alpha: float) -> ParametrizedSurface:
    """The model graph w = alpha z zbar + (z^2 + zbar^2)/2 over a disc
    (w = z zbar for alpha = inf): one complex point at the origin with
    invariant alpha.  Not closed; survey does not apply."""
    a = float(alpha)
    if a < 0:
        raise ValueError("the model surface needs alpha >= 0")

    def ev(u, v):
        z = u + 1j * v
        if math.isinf(a):
            w = u * u + v * v
        else:
            w = a * (u * u + v * v) + (u * u - v * v)
        return z, w + 0j

    def d_du(u, v):
        one = u * 0 + 1.0
        wu = 2.0 * u if math.isinf(a) else 2.0 * (a + 1.0) * u
        return one + 0j, wu + 0j

    def d_dv(u, v):
        one = u * 0 + 1.0
        wv = 2.0 * v if math.isinf(a) else 2.0 * (a - 1.0) * v
        return 1j * one, wv + 0j

    label = f"graph-normal-form:{alpha}"
    chart = Chart(ev, (-0.8, 0.8), (-0.8, 0.8), False, False, d_du, d_dv, None, "graph")
    return ParametrizedSurface(label, (chart,), True, False, None, None)


BUILTIN_SURFACES = ("flat-torus", "round-sphere", "wrinkled-sphere", "graph-normal-form:<alpha>")


def builtin_surface(name: str) -> ParametrizedSurface:
    key = name.strip()
    if key == "flat-torus":
        return flat_torus()
    if key == "round-sphere":
        return round_sphere()
    if key == "wrinkled-sphere":
        return wrinkled_sphere()
    if key.startswith("graph-normal-form:"):
        suffix = key.split(":", 1)[1]
        value = math.inf if suffix.strip().lower() == "inf" else float(suffix)
        return graph_normal_form(value)
    raise ValueError(f"unknown builtin surface {name!r}; available: {', '.join(BUILTIN_SURFACES)}")
