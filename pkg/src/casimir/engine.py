"""Zero-temperature Lifshitz energy and pressure for two half-spaces in vacuum.

The energy per unit area at separation ``a`` is

    E(a) = (hbar / 4 pi^2) \int_0^inf dxi \int_0^inf k dk
           sum_{p in TE,TM} ln(1 - r1_p r2_p exp(-2 kappa0 a))

with kappa0 = sqrt(k^2 + xi^2/c^2) the vacuum decay constant and r_j the
vacuum-medium reflection coefficients at imaginary frequency xi.  The
pressure is the a-derivative taken inside the integral.  Negative values
mean attraction (the plates bind).

Numerics: the inner integral is rewritten over the dimensionless variable
y = 2 kappa0 a (so k dk -> y dy / (2a)^2 with lower limit y0 = 2 a xi / c),
which makes the exponential kernel separation-independent.  Both axes use
vectorized adaptive Gauss-Kronrod panels; inner-integral error estimates
are propagated into the outer total in quadrature sum.
"""

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .constants import C, HBAR
from .errors import (ContinuumModelWarning, ConvergenceError,
                     DegenerateIntegrandError, DomainError)
from .materials import (DIVERGENT, InfinitelyPermeable, MaterialResponse,
                        PerfectConductor, Plasma)
from .quadrature import geometric_edges, integrate_adaptive


@dataclass(frozen=True)
class QuadraturePoint:
    """One point of the double integration domain.

    xi is the angular frequency on the positive imaginary axis (rad/s,
    the Wick-rotated time component of the mode vector); k is the
    magnitude of the wave vector parallel to the plates (1/m).
    """

    xi: float
    k: float

    def __post_init__(self):
        if not (np.isfinite(self.xi) and np.isfinite(self.k)):
            raise DomainError("quadrature point must be finite")
        if self.xi < 0.0 or self.k < 0.0:
            raise DomainError("quadrature point needs xi >= 0 and k >= 0")

    @property
    def kappa0(self):
        """Vacuum decay constant sqrt(k^2 + xi^2/c^2), always >= xi/c."""
        return float(np.hypot(self.k, self.xi / C))


class ReflectionPair(NamedTuple):
    r_te: float
    r_tm: float


@dataclass(frozen=True)
class GapConfig:
    """Two material half-spaces separated by a vacuum gap of width a (m)."""

    a: float
    material1: MaterialResponse
    material2: MaterialResponse

    def __post_init__(self):
        if not isinstance(self.material1, MaterialResponse) or \
           not isinstance(self.material2, MaterialResponse):
            raise DomainError("material1/material2 must be MaterialResponse instances")
        if not np.isfinite(self.a) or self.a <= 0.0:
            raise DomainError("gap must be positive")
        if self.a < 1e-9:
            warnings.warn("separation below 1 nm: continuum material response "
                          "is questionable at this scale", ContinuumModelWarning,
                          stacklevel=2)

    @property
    def unphysical(self):
        """Non-dispersive flag inherited from either material."""
        return self.material1.unphysical or self.material2.unphysical


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy and truncation knobs for the double quadrature.

    abs_floor is interpreted in the unit of the requested result
    (J/m^2 for energies, Pa for pressures).  max_subdivisions budgets the
    outer adaptive axis; each inner integral gets an independent budget of
    min(max_subdivisions, 300).
    """

    rel_tol: float = 1e-8
    abs_floor: float = 1e-30
    max_subdivisions: int = 4000
    xi_cutoff_factor: float = 60.0
    y_cutoff: float = 80.0

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("rel_tol must lie in (0, 1)")
        if self.abs_floor < 0.0:
            raise DomainError("abs_floor must be non-negative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")
        if self.xi_cutoff_factor <= 0.0 or self.y_cutoff <= 0.0:
            raise DomainError("cutoffs must be positive")


@dataclass(frozen=True)
class EnergyResult:
    """Signed Casimir energy per unit area.

    dominant_xi is the abscissa of the peak of the per-log-frequency
    contribution xi*|F(xi)| among the sampled outer points (None when the
    integrand vanishes identically); 2 pi c / dominant_xi is the
    wavelength doing most of the work, of order the separation.
    """

    value: float          # J/m^2, negative = attraction
    error_estimate: float  # J/m^2
    dominant_xi: Optional[float] = None  # rad/s


@dataclass(frozen=True)
class PressureResult:
    """Signed Casimir pressure; negative pulls the plates together."""

    value: float          # Pa
    error_estimate: float  # Pa
    dominant_xi: Optional[float] = None  # rad/s


# ---------------------------------------------------------------------------
# Reflection coefficients
# ---------------------------------------------------------------------------

def _mirror_pair(material):
    if isinstance(material, PerfectConductor):
        return (-1.0, 1.0)
    if isinstance(material, InfinitelyPermeable):
        return (1.0, -1.0)
    return None


def _refl_factory(material, xi):
    """Vacuum-medium (r_te, r_tm) as a function of a kappa0 array, at fixed xi > 0."""
    mirror = _mirror_pair(material)
    if mirror is not None:
        rte, rtm = mirror

        def rf(kappa0):
            shape = np.shape(kappa0)
            return np.full(shape, rte), np.full(shape, rtm)

        return rf

    e = float(material.eps(xi))
    m = float(material.mu(xi))
    em_xic2 = (e * m - 1.0) * (xi / C) ** 2

    def rf(kappa0):
        kappa = np.sqrt(np.maximum(kappa0 * kappa0 + em_xic2, 0.0))
        r_te = (m * kappa0 - kappa) / (m * kappa0 + kappa)
        r_tm = (e * kappa0 - kappa) / (e * kappa0 + kappa)
        return r_te, r_tm

    return rf


def reflection(material, point):
    """TE and TM reflection coefficients of a vacuum-material interface.

    Both coefficients are real with magnitude <= 1 for any passive model.
    At xi = 0 the divergent-permittivity models are resolved through
    their analytic limits: a Drude metal (and conductor-like tabulated
    data) reflects as (0, +1), a dissipationless plasma keeps a finite TE
    coefficient through kappa = sqrt(k^2 + wp^2/c^2).
    """
    if not isinstance(point, QuadraturePoint):
        raise DomainError("point must be a QuadraturePoint")
    mirror = _mirror_pair(material)
    if mirror is not None:
        return ReflectionPair(*mirror)
    xi, k = point.xi, point.k
    kappa0 = point.kappa0
    if kappa0 == 0.0:
        raise DomainError("reflection is undefined at xi = k = 0")
    e = material.eps(xi)
    m = material.mu(xi)
    if e is DIVERGENT:
        if isinstance(material, Plasma):
            kappa = float(np.hypot(k, material.omega_p / C))
            return ReflectionPair((kappa0 - kappa) / (kappa0 + kappa), 1.0)
        # eps ~ 1/xi or slower: eps*xi^2 -> 0, so kappa -> kappa0 in TE
        return ReflectionPair(0.0, 1.0)
    kappa = float(np.sqrt(k * k + e * m * (xi / C) ** 2))
    return ReflectionPair((m * kappa0 - kappa) / (m * kappa0 + kappa),
                          (e * kappa0 - kappa) / (e * kappa0 + kappa))


# ---------------------------------------------------------------------------
# Integrand kernels
# ---------------------------------------------------------------------------

def _stable_q(p, emy, y):
    """1 - p e^{-y} = (1 - e^{-y}) + (1-p) e^{-y}, exact to rounding for p <= 1."""
    return -np.expm1(-y) + (1.0 - p) * emy


def _ln_one_minus(p, emy, y):
    """ln(1 - p e^{-y}) via log1p for small arguments, stable q otherwise."""
    x = p * emy
    return np.where(np.abs(x) < 0.5, np.log1p(-x), np.log(_stable_q(p, emy, y)))


def _inner_integrand(cfg, xi, kind):
    """Integrand over y = 2 kappa0 a at fixed xi, summed over polarizations."""
    two_a = 2.0 * cfg.a
    rf1 = _refl_factory(cfg.material1, xi)
    rf2 = _refl_factory(cfg.material2, xi)

    def g(y):
        kappa0 = y / two_a
        r1te, r1tm = rf1(kappa0)
        r2te, r2tm = rf2(kappa0)
        pte = r1te * r2te
        ptm = r1tm * r2tm
        emy = np.exp(-y)
        if kind == "energy":
            return y * (_ln_one_minus(pte, emy, y) + _ln_one_minus(ptm, emy, y))
        return y * y * (pte * emy / _stable_q(pte, emy, y)
                        + ptm * emy / _stable_q(ptm, emy, y))

    return g


def _xi_cutoff(cfg, quad):
    """Outer truncation: the configured cutoff, capped by the exact dead
    zone where the inner lower limit y0 already exceeds y_cutoff."""
    scale = C / cfg.a
    resonance = max(cfg.material1.resonance_scale, cfg.material2.resonance_scale)
    configured = max(quad.xi_cutoff_factor * scale, 1e3 * resonance)
    dead = quad.y_cutoff * C / (2.0 * cfg.a)
    return min(configured, dead)


_INNER_BUDGET = 300


def _integrate_double(cfg, quad, kind):
    """Raw double integral (no physical prefactor) plus diagnostics."""
    a = cfg.a
    inner_tol = 0.1 * quad.rel_tol
    inner_budget = min(quad.max_subdivisions, _INNER_BUDGET)
    y_cut = quad.y_cutoff
    samples_xi = []
    samples_f = []

    def outer(xi_arr):
        vals = np.empty(xi_arr.shape)
        errs = np.empty(xi_arr.shape)
        for i, xi in enumerate(xi_arr):
            y0 = 2.0 * a * xi / C
            if y0 >= y_cut:
                vals[i] = 0.0
                errs[i] = 0.0
                continue
            g = _inner_integrand(cfg, float(xi), kind)
            edges = geometric_edges(y0, y_cut, 0.25)
            r = integrate_adaptive(g, edges, rel_tol=inner_tol,
                                   max_subdivisions=inner_budget)
            vals[i] = r.value
            errs[i] = r.error
        samples_xi.append(xi_arr.copy())
        samples_f.append(vals.copy())
        return vals, errs

    xi_max = _xi_cutoff(cfg, quad)
    xi_edges = np.concatenate([[0.0],
                               geometric_edges(1e-4 * C / a, xi_max, 1e-4 * C / a)])
    res = integrate_adaptive(outer, xi_edges, rel_tol=quad.rel_tol,
                             abs_floor=_raw_floor(cfg, quad, kind),
                             max_subdivisions=quad.max_subdivisions,
                             with_errors=True)
    xi_all = np.concatenate(samples_xi)
    f_all = np.concatenate(samples_f)
    weight = xi_all * np.abs(f_all)
    dominant = float(xi_all[np.argmax(weight)]) if np.any(weight > 0.0) else None
    return res, dominant


def _prefactor(cfg, kind):
    if kind == "energy":
        return HBAR / (16.0 * np.pi ** 2 * cfg.a ** 2)
    return HBAR / (16.0 * np.pi ** 2 * cfg.a ** 3)


def _raw_floor(cfg, quad, kind):
    return quad.abs_floor / _prefactor(cfg, kind)


def energy_per_area(cfg, quad=None):
    """Casimir energy per unit area of the gap configuration, J/m^2.

    Negative values bind the plates.  The error estimate satisfies
    ``error <= rel_tol*|value| + abs_floor`` on success; otherwise a
    ConvergenceError carrying the best estimate is raised.
    """
    quad = quad or QuadratureConfig()
    res, dominant = _integrate_double(cfg, quad, "energy")
    pref = _prefactor(cfg, "energy")
    result = EnergyResult(pref * res.value, pref * res.error, dominant)
    if not res.converged:
        raise ConvergenceError("energy quadrature did not converge within "
                               f"{quad.max_subdivisions} subdivisions", best=result)
    return result


def pressure(cfg, quad=None):
    """Casimir pressure on the plates, Pa; negative = attraction."""
    quad = quad or QuadratureConfig()
    res, dominant = _integrate_double(cfg, quad, "pressure")
    pref = _prefactor(cfg, "pressure")
    result = PressureResult(-pref * res.value, pref * res.error, dominant)
    if not res.converged:
        raise ConvergenceError("pressure quadrature did not converge within "
                               f"{quad.max_subdivisions} subdivisions", best=result)
    return result


def dominant_frequency(cfg, quad=None):
    """Imaginary frequency dominating the energy integral, rad/s.

    Defined as the peak of the per-log-frequency contribution
    xi * |F(xi)| of the outer integrand F; located on a logarithmic scan
    and refined by a parabolic fit.  Raises DegenerateIntegrandError when
    the integrand vanishes everywhere (e.g. one side is vacuum).
    """
    quad = quad or QuadratureConfig()
    a = cfg.a
    xi_max = _xi_cutoff(cfg, quad)
    xi_lo = 1e-4 * C / a
    n = max(int(25 * np.log10(xi_max / xi_lo)), 50)
    grid = np.geomspace(xi_lo, xi_max, n)
    vals = np.empty(n)
    for i, xi in enumerate(grid):
        y0 = 2.0 * a * xi / C
        if y0 >= quad.y_cutoff:
            vals[i] = 0.0
            continue
        g = _inner_integrand(cfg, float(xi), "energy")
        r = integrate_adaptive(g, geometric_edges(y0, quad.y_cutoff, 0.25),
                               rel_tol=1e-6, max_subdivisions=_INNER_BUDGET)
        vals[i] = r.value
    weight = grid * np.abs(vals)
    if not np.any(weight > 0.0):
        raise DegenerateIntegrandError("outer integrand vanishes everywhere; "
                                       "no dominant frequency exists")
    m = int(np.argmax(weight))
    if m == 0 or m == n - 1:
        return float(grid[m])
    # parabolic vertex through the three points around the maximum, in log xi
    t = np.log(grid[m - 1:m + 2])
    s = weight[m - 1:m + 2]
    denom = s[0] - 2.0 * s[1] + s[2]
    if denom >= 0.0:
        return float(grid[m])
    shift = 0.5 * (s[0] - s[2]) / denom
    return float(np.exp(t[1] + shift * (t[2] - t[1])))
