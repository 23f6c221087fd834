"""Non-binary Stern information-set-decoding cost model.

Per iteration: full Gaussian elimination, building two lists of
C(k/2, p) (q-1)^p partial sums on an ell-symbol window, and checking the
expected collisions.  Iterations are the reciprocal of the chance that an
information set splits the error p/p with no error in the window.  Costs
are counted in field operations and scaled by log2(q) to binary operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..qtransform import default_m

P_RANGE = range(0, 5)  # p = 0 covers weights too small for a split
ELL_RANGE = range(1, 30)


@dataclass(frozen=True)
class WfReport:
    n: int
    k: int
    q: int
    t_eff: int
    z: int
    m: Fraction
    log2_wf: float
    p: int
    ell: int


def _log2(x) -> float:
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


def stern_log2_cost(n: int, k: int, q: int, w: int, p: int, ell: int) -> float:
    """log2 binary operations for one (p, ell) choice; inf when infeasible."""
    r = n - k
    k1, k2 = k // 2, k - k // 2
    if 2 * p > w or p > k1 or ell > r - (w - 2 * p):
        return math.inf
    size = math.comb(k1, p) * (q - 1) ** p
    elimination = Fraction(r * r * (n + k), 2)
    lists = ((k1 - p + 1) + 2 * size) * ell
    collisions = (Fraction(q, q - 1) * (w - 2 * p + 1) * 2 * p
                  * (1 + Fraction(q - 2, q - 1)) * Fraction(size * size, q ** ell))
    per_iter = elimination + lists + collisions
    success = Fraction(math.comb(k1, p) * math.comb(k2, p) * math.comb(r - ell, w - 2 * p),
                       math.comb(n, w))
    return _log2(per_iter) - _log2(success) + math.log2(math.log2(q))


def isd_workfactor(n: int, k: int, q: int, t_eff: int, z: int = 1, m=None) -> WfReport:
    """Minimum of the Stern cost over p and ell."""
    if not 1 <= t_eff <= n - k:
        raise ValueError(f"infeasible error weight {t_eff} for n={n}, k={k}")
    best = (math.inf, 0, 0)
    for p in P_RANGE:
        for ell in ELL_RANGE:
            c = stern_log2_cost(n, k, q, t_eff, p, ell)
            if c < best[0]:
                best = (c, p, ell)
    if best[0] == math.inf:
        raise ValueError("no feasible Stern parameters")
    return WfReport(n, k, q, t_eff, z, Fraction(m) if m is not None else default_m(n, k), *best)


def dap_lower_bound(k: int, q: int, z: int) -> float:
    """log2 of k^3 q^(3z)."""
    return 3 * math.log2(k) + 3 * z * math.log2(q)


# correction capabilities of the published parameter grids (rate decreasing)
GRID_307_T = (32, 34, 35, 37, 39, 40, 42, 43, 45, 46, 47, 49, 51, 52, 54)
GRID_512_T = (21, 26, 29, 31, 34, 37, 39, 42, 44, 47, 49, 54, 57, 60, 62)


@dataclass(frozen=True)
class GridRow:
    n: int
    k: int
    q: int
    z: int
    t: int
    t_pub: int
    rate: float
    report: WfReport


def wf_grid(q: int, z: int, ts=None) -> list:
    """WF rows for n = q - 1 at the threshold m, with t_eff = t_pub - z."""
    n = q - 1
    if ts is None:
        ts = {307: GRID_307_T, 512: GRID_512_T}[q]
    rows = []
    for t in ts:
        k = n - 2 * t
        m = default_m(n, k)
        t_pub = math.floor(Fraction(t) / m)
        rows.append(GridRow(n, k, q, z, t, t_pub, k / n, isd_workfactor(n, k, q, t_pub - z, z, m)))
    return rows
