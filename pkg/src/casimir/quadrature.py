"""Adaptive Gauss-Kronrod quadrature on vectorized integrands.

Panels are refined by bisection until the summed Kronrod error estimate
meets ``rel_tol * |value| + abs_floor``.  Integrands are called on flat
numpy arrays covering all nodes of all pending panels at once, which keeps
the Python overhead per refinement round constant.

An integrand may also return a per-point error array (``with_errors``);
those foreign errors are propagated into the total in quadrature sum.
This is how inner-integral uncertainties reach the outer result in the
nested double integrals of the engine.
"""

import numpy as np
from dataclasses import dataclass

# 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_GK_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# Gauss nodes sit at the odd Kronrod indices.
_G_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])


@dataclass
class QuadResult:
    """Outcome of one adaptive integration.

    ``error`` already includes foreign (integrand-supplied) errors.
    ``points``/``values`` hold every abscissa/integrand value evaluated,
    in evaluation order; they are kept so callers can locate the peak of
    the integrand without extra work.
    """

    value: float
    error: float
    converged: bool
    n_evals: int
    points: np.ndarray
    values: np.ndarray


def _eval_panels(f, lo, hi, with_errors):
    """Apply the GK15 rule to every [lo_i, hi_i] panel in one integrand call."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid[:, None] + np.outer(half, _GK_NODES)
    out = f(x.reshape(-1))
    if with_errors:
        fx, fe = out
        fe = np.asarray(fe, dtype=float).reshape(x.shape)
    else:
        fx = out
        fe = None
    fx = np.asarray(fx, dtype=float).reshape(x.shape)
    kron = (fx @ _GK_WEIGHTS) * half
    gauss = (fx[:, 1::2] @ _G_WEIGHTS) * half
    err = np.abs(kron - gauss)
    if with_errors:
        foreign_sq = ((fe * _GK_WEIGHTS) ** 2).sum(axis=1) * half * half
    else:
        foreign_sq = np.zeros_like(kron)
    return kron, err, foreign_sq, x.reshape(-1), fx.reshape(-1)


def integrate_adaptive(f, edges, rel_tol, abs_floor=0.0, max_subdivisions=1000,
                       with_errors=False):
    """Integrate ``f`` over the interval spanned by ``edges``.

    Parameters
    ----------
    f : callable
        Vectorized integrand; maps a 1-D array of abscissae to values.
        When ``with_errors`` is true it must return ``(values, errors)``.
    edges : array_like
        Increasing panel edges seeding the subdivision; the integral runs
        from ``edges[0]`` to ``edges[-1]``.  Seeding matters: panels should
        roughly track the scale of variation of the integrand.
    rel_tol, abs_floor : float
        Convergence target ``err <= rel_tol*|value| + abs_floor``.
    max_subdivisions : int
        Total panel-split budget.  On exhaustion the best estimate is
        returned with ``converged=False`` (no exception: the caller decides
        whether that is fatal).

    Returns
    -------
    QuadResult
    """
    edges = np.asarray(edges, dtype=float)
    if edges.size < 2 or edges[-1] <= edges[0]:
        return QuadResult(0.0, 0.0, True, 0,
                          np.empty(0), np.empty(0))
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    vals, errs, fsq, pts, fvs = _eval_panels(f, lo, hi, with_errors)
    all_pts = [pts]
    all_fvs = [fvs]
    n_evals = pts.size
    splits = 0
    converged = False

    while True:
        total = float(vals.sum())
        error = float(errs.sum() + np.sqrt(fsq.sum()))
        tol = rel_tol * abs(total) + abs_floor
        if error <= tol:
            converged = True
            break
        # Refine every panel holding more than its share of the budget;
        # always at least the worst one.
        cutoff = tol / (2.0 * len(vals)) if len(vals) else 0.0
        mask = errs > cutoff
        if not mask.any():
            mask[np.argmax(errs)] = True
        # panels narrower than a few ulps cannot be split further
        splittable = (hi - lo) > 16 * np.spacing(np.maximum(np.abs(lo), np.abs(hi)))
        mask &= splittable
        if not mask.any():
            break
        n_split = int(mask.sum())
        if splits + n_split > max_subdivisions:
            budget = max_subdivisions - splits
            if budget <= 0:
                break
            worst = np.argsort(-np.where(mask, errs, -np.inf))[:budget]
            mask = np.zeros_like(mask)
            mask[worst] = True
            n_split = budget
        splits += n_split

        mid = 0.5 * (lo[mask] + hi[mask])
        child_lo = np.concatenate([lo[mask], mid])
        child_hi = np.concatenate([mid, hi[mask]])
        cv, ce, cf, cp, cfx = _eval_panels(f, child_lo, child_hi, with_errors)
        all_pts.append(cp)
        all_fvs.append(cfx)
        n_evals += cp.size

        keep = ~mask
        lo = np.concatenate([lo[keep], child_lo])
        hi = np.concatenate([hi[keep], child_hi])
        vals = np.concatenate([vals[keep], cv])
        errs = np.concatenate([errs[keep], ce])
        fsq = np.concatenate([fsq[keep], cf])

    return QuadResult(float(vals.sum()),
                      float(errs.sum() + np.sqrt(fsq.sum())),
                      converged, n_evals,
                      np.concatenate(all_pts), np.concatenate(all_fvs))


def geometric_edges(start, stop, first_width):
    """Panel edges from ``start`` to ``stop`` with geometrically growing widths.

    Suits integrands that decay on a scale comparable to ``first_width``
    near ``start`` and ever more slowly (in relative terms) beyond.
    """
    if stop <= start:
        return np.array([start, stop])
    edges = [start]
    width = first_width
    while edges[-1] + width < stop:
        edges.append(edges[-1] + width)
        width *= 2.0
    edges.append(stop)
    return np.array(edges)
