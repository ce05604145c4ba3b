"""Exact rational linear programming.

A dense two-phase tableau simplex with Bland's rule: slow, but exact,
deterministic, and able to hand back dual multipliers, which is what the
regularity certificates need.  Problem sizes here are tiny (tens of
variables, low hundreds of constraints), so no effort is spent on
sparsity or revised-simplex bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Z = Fraction(0)


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None
    # One multiplier per input row, A_ub rows first, then A_eq rows.
    # Inequality duals are >= 0 at an optimum.
    dual: list[Fraction] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _pivot(tab, obj, basis, row, col):
    pv = tab[row][col]
    tab[row] = [x / pv for x in tab[row]]
    prow = tab[row]
    for r, trow in enumerate(tab):
        if r != row and trow[col] != 0:
            f = trow[col]
            tab[r] = [x - f * y for x, y in zip(trow, prow)]
    if obj[col] != 0:
        f = obj[col]
        for j, y in enumerate(prow):
            if y != 0:
                obj[j] -= f * y
    basis[row] = col


def _run_simplex(tab, obj, basis, allowed):
    """Maximize with Bland's rule; obj holds z_j - c_j entries plus the
    running objective value in the last slot (negated)."""
    ncols = len(tab[0]) - 1
    while True:
        enter = None
        for j in range(ncols):
            if allowed[j] and obj[j] < 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for r, trow in enumerate(tab):
            a = trow[enter]
            if a > 0:
                ratio = trow[-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave is None:
            return "unbounded"
        _pivot(tab, obj, basis, leave, enter)


def solve_lp(c, a_ub, b_ub, a_eq=(), b_eq=(), nonneg=False) -> LPResult:
    """Maximize c.x subject to a_ub x <= b_ub and a_eq x = b_eq.

    Variables are free by default; pass nonneg=True when the model is
    already stated over nonnegative variables (saves the u-v split).
    """
    c = [Fraction(v) for v in c]
    nfree = len(c)
    rows = []
    for coeffs, rhs in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in coeffs], Fraction(rhs), "ub"))
    for coeffs, rhs in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in coeffs], Fraction(rhs), "eq"))
    nrows = len(rows)
    if nrows == 0:
        if all(v == 0 for v in c) or (nonneg and all(v <= 0 for v in c)):
            return LPResult("optimal", x=[Z] * nfree, value=Z, dual=[])
        return LPResult("unbounded")

    if nonneg:
        nvars = nfree
        expand = lambda coeffs: list(coeffs)
        cvec = list(c)
    else:
        nvars = 2 * nfree
        expand = lambda coeffs: list(coeffs) + [-v for v in coeffs]
        cvec = list(c) + [-v for v in c]

    n_ub = sum(1 for _, _, kind in rows if kind == "ub")
    ncols = nvars + n_ub + nrows  # structural | slacks | artificials
    tab = []
    basis = []
    flipped = []
    marker = []  # unit column identifying each row, for dual recovery
    needs_art = []
    slack_idx = 0
    for coeffs, rhs, kind in rows:
        flip = rhs < 0
        if flip:
            coeffs = [-v for v in coeffs]
            rhs = -rhs
        row = expand(coeffs) + [Z] * (n_ub + nrows) + [rhs]
        art = True
        if kind == "ub":
            scol = nvars + slack_idx
            slack_idx += 1
            row[scol] = Fraction(-1) if flip else Fraction(1)
            if not flip:
                art = False
                basis.append(scol)
                marker.append(scol)
        if art:
            acol = nvars + n_ub + len(tab)
            row[acol] = Fraction(1)
            basis.append(acol)
            marker.append(acol)
        flipped.append(flip)
        needs_art.append(art)
        tab.append(row)

    art_cols = set(range(nvars + n_ub, nvars + n_ub + nrows))
    live = [True] * nrows  # rows surviving redundancy elimination

    # Phase 1: drive artificials to zero (maximize minus their sum).
    if any(needs_art):
        obj = [Z] * (ncols + 1)
        for r, row in enumerate(tab):
            if basis[r] in art_cols:
                for j in range(ncols + 1):
                    obj[j] -= row[j]
        for j in art_cols:
            obj[j] += 1
        allowed = [j not in art_cols for j in range(ncols)]
        _run_simplex(tab, obj, basis, allowed)
        # phase-1 value is -(sum of artificials); anything below zero
        # means no feasible point exists
        if obj[-1] < 0:
            return LPResult("infeasible")
        # Drive leftover basic artificials out; zero rows are redundant.
        for r in range(nrows):
            if basis[r] in art_cols:
                col = next(
                    (j for j in range(nvars + n_ub) if tab[r][j] != 0), None
                )
                if col is not None:
                    _pivot(tab, obj, basis, r, col)
                else:
                    live[r] = False

    # Phase 2 objective row built from scratch against the current basis.
    obj = [-v for v in cvec] + [Z] * (n_ub + nrows + 1)
    for r, row in enumerate(tab):
        cb = cvec[basis[r]] if basis[r] < nvars else Z
        if cb != 0:
            for j in range(ncols + 1):
                obj[j] += cb * row[j]
    allowed = [j not in art_cols for j in range(ncols)]
    for r in range(nrows):
        if not live[r]:
            for j in range(ncols):
                tab[r][j] = Z
            tab[r][-1] = Z
    status = _run_simplex(tab, obj, basis, allowed)
    if status == "unbounded":
        return LPResult("unbounded")

    xfull = [Z] * ncols
    for r in range(nrows):
        if live[r]:
            xfull[basis[r]] = tab[r][-1]
    if nonneg:
        x = xfull[:nfree]
    else:
        x = [xfull[i] - xfull[nfree + i] for i in range(nfree)]
    value = sum(ci * xi for ci, xi in zip(c, x)) if c else Z

    dual = []
    for r in range(nrows):
        if not live[r]:
            dual.append(Z)
            continue
        y = obj[marker[r]]
        dual.append(-y if flipped[r] else y)
    return LPResult("optimal", x=x, value=value, dual=dual)


def lp_feasible(a_ub, b_ub, a_eq=(), b_eq=(), nvars=None, nonneg=False):
    """Feasibility check; returns a feasible point or None."""
    if nvars is None:
        src = a_ub if len(a_ub) else a_eq
        nvars = len(src[0])
    res = solve_lp([Z] * nvars, a_ub, b_ub, a_eq, b_eq, nonneg=nonneg)
    return res.x if res.optimal else None
