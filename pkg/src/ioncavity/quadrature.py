"""Adaptive Simpson integration over arrays of panels.

Panels are refined breadth-first: every unresolved panel of one level is
bisected and evaluated in a single vectorised call to the integrand.
"""

import math
from collections.abc import Callable
from typing import Optional, Tuple

import numpy as np

from .errors import QuadratureNoConvergence

MIN_PANELS = 16


def _simpson(fa, fm, fb, width):
    return width / 6.0 * (fa + 4.0 * fm + fb)


def integrate_adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-8,
    max_depth: int = 40,
    max_panel_width: Optional[float] = None,
) -> Tuple[float, float]:
    """Adaptive Simpson's rule with Richardson correction.

    A panel is accepted once |S(left) + S(right) - S(whole)| <= 15 * tol_panel,
    where tol_panel is rel_tol times the current magnitude estimate of the
    integral, shared out in proportion to the panel width.

    Args:
        f: Vectorised integrand, called with 1-D arrays of abscissae.
        a: Lower bound.
        b: Upper bound, b >= a.
        rel_tol: Relative error tolerance.
        max_depth: Maximum number of bisection levels.
        max_panel_width: Upper bound on the width of the starting panels;
            use it to resolve oscillations before any error test is made.

    Returns:
        Tuple of (integral_value, error_estimate).

    Raises:
        ValueError: If b < a.
        QuadratureNoConvergence: If panels remain unresolved after max_depth levels.
    """
    if b < a:
        raise ValueError(f"Upper bound must not be below lower bound, got [{a}, {b}]")
    if a == b:
        return 0.0, 0.0

    length = b - a
    n_panels = MIN_PANELS
    if max_panel_width is not None and max_panel_width > 0:
        n_panels = max(n_panels, math.ceil(length / max_panel_width))

    edges = np.linspace(a, b, n_panels + 1)
    left, right = edges[:-1], edges[1:]
    mid = 0.5 * (left + right)
    f_edges = f(edges)
    fl, fr = f_edges[:-1], f_edges[1:]
    fm = f(mid)
    whole = _simpson(fl, fm, fr, right - left)

    total = 0.0
    error = 0.0
    for _ in range(max_depth):
        width = right - left
        lm = 0.5 * (left + mid)
        rm = 0.5 * (mid + right)
        f_quarters = f(np.concatenate([lm, rm]))
        flm, frm = f_quarters[: lm.size], f_quarters[lm.size:]
        s_left = _simpson(fl, flm, fm, 0.5 * width)
        s_right = _simpson(fm, frm, fr, 0.5 * width)
        delta = s_left + s_right - whole

        scale = abs(total) + float(np.sum(np.abs(s_left + s_right)))
        tol_panel = rel_tol * scale * (width / length)
        done = np.abs(delta) <= 15.0 * tol_panel

        total += float(np.sum(s_left[done] + s_right[done] + delta[done] / 15.0))
        error += float(np.sum(np.abs(delta[done]))) / 15.0
        if done.all():
            return total, error

        keep = ~done
        left = np.concatenate([left[keep], mid[keep]])
        right = np.concatenate([mid[keep], right[keep]])
        new_mid = np.concatenate([lm[keep], rm[keep]])
        new_fl = np.concatenate([fl[keep], fm[keep]])
        new_fr = np.concatenate([fm[keep], fr[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([s_left[keep], s_right[keep]])
        mid, fl, fr = new_mid, new_fl, new_fr

    raise QuadratureNoConvergence(
        f"Adaptive Simpson did not reach rel_tol={rel_tol:g} within {max_depth} levels "
        f"({left.size} panels unresolved on [{a:g}, {b:g}])"
    )
