"""Exact rational feasibility for small linear systems (phase-one simplex)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def feasible(
    a: Sequence[Sequence[int]],
    b: Sequence[int],
    upper: Optional[Sequence[Optional[int]]] = None,
) -> bool:
    """Whether ``a x = b`` has a rational solution with ``0 <= x <= upper``.

    ``upper[j] = None`` leaves ``x_j`` unbounded above.  Bland's rule keeps
    the simplex from cycling; all arithmetic is in ``Fraction``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    upper = list(upper) if upper is not None else [None] * n
    # Bounded variables get a slack row x_j + w_j = u_j.
    rows = [[Fraction(x) for x in r] for r in a]
    rhs = [Fraction(x) for x in b]
    slacks = [j for j in range(n) if upper[j] is not None]
    width = n + len(slacks)
    rows = [r + [Fraction(0)] * len(slacks) for r in rows]
    for k, j in enumerate(slacks):
        r = [Fraction(0)] * width
        r[j] = Fraction(1)
        r[n + k] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(upper[j]))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    nrows = len(rows)
    if nrows == 0:
        return True
    # Tableau with one artificial variable per row.
    total = width + nrows
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(nrows)] + [rhs[i]] for i in range(nrows)]
    basis = [width + i for i in range(nrows)]
    # Objective: minimise the sum of artificials; reduced costs row.
    cost = [Fraction(0)] * (total + 1)
    for i in range(nrows):
        for j in range(width):
            cost[j] -= tab[i][j]
        cost[total] -= tab[i][total]

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(nrows):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # pragma: no cover - phase one is bounded below
            break
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    return cost[total] == 0
