"""Sign-change scanning and bisection shared by the eigenvalue and pole searches."""
import math

import numpy as np

from .errors import NoSignChangeError


def scan_brackets(func, grid):
    """Evaluate func on grid and return (lo, hi, f_lo, f_hi, local_scale) per sign change.

    A grid point where func is exactly zero yields a degenerate bracket
    (x, x). ``local_scale`` is the largest |func| among the bracket and
    its immediate neighbours.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.array([func(x) for x in grid], dtype=float)
    mags = np.abs(values)
    brackets = []
    n = grid.size
    for i in range(n):
        neighbourhood = mags[max(0, i - 1):min(n, i + 3)]
        scale = float(neighbourhood.max()) if neighbourhood.size else 0.0
        if values[i] == 0.0:
            brackets.append((grid[i], grid[i], 0.0, 0.0, scale))
            continue
        if i + 1 < n and values[i] * values[i + 1] < 0.0:
            brackets.append((grid[i], grid[i + 1], values[i], values[i + 1], scale))
    return brackets


def bisect(func, lo, hi, f_lo=None, f_hi=None, rel_width=1e-12, to_ulp=True):
    """Refine a sign-change bracket by bisection.

    Stops once the bracket is narrower than ``rel_width`` relative to its
    midpoint and, with ``to_ulp``, keeps going until no representable
    midpoint remains. Returns (root, lo, hi, f(root)).
    """
    if f_lo is None:
        f_lo = func(lo)
    if f_hi is None:
        f_hi = func(hi)
    if lo == hi:
        return lo, lo, hi, f_lo
    if f_lo == 0.0:
        return lo, lo, lo, 0.0
    if f_hi == 0.0:
        return hi, hi, hi, 0.0
    if f_lo * f_hi > 0.0:
        raise NoSignChangeError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid, mid, mid, 0.0
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if not to_ulp and hi - lo <= rel_width * max(abs(mid), math.ulp(1.0)):
            break
    if abs(f_lo) <= abs(f_hi):
        return lo, lo, hi, f_lo
    return hi, lo, hi, f_hi
