"""Frobenius pushforwards of rank-one reflexive sheaves on toric varieties.

For a fan whose rays generate ``M*`` the class group is free, and
``F^e_* O_Y(c)`` splits into rank-one summands ``O_Y(c')``: each vector
``a in {0, ..., q-1}^rays`` (``q = p^e``) with
``c - sum a_sigma [D_sigma] in q Cl(Y)`` contributes one copy of
``c' = (c - sum a_sigma [D_sigma]) / q``.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional, Union

from ._lp import feasible
from .divisors import DivisorClass, TorusDivisor, class_group
from .errors import EnumerationCapError, InputError, TorsionClassGroupError
from .fan import Fan, rays_span_dual

DEFAULT_CAP = 10**8
CAP_ENV = "TORIX_CAP"


def default_cap() -> int:
    """The enumeration cap from ``TORIX_CAP``, else :data:`DEFAULT_CAP`."""
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise InputError(f"{CAP_ENV} must be positive")
    return cap


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FrobeniusDecomposition:
    fan: Fan
    p: int
    e: int
    source: DivisorClass
    summands: tuple[tuple[DivisorClass, int], ...]

    @property
    def total_rank(self) -> int:
        return sum(m for _, m in self.summands)

    def multiplicities(self) -> dict[tuple[int, ...], int]:
        """``{free coordinates of the class: multiplicity}``."""
        return {c.free_part: m for c, m in self.summands}

    def support(self) -> set[tuple[int, ...]]:
        return {c.free_part for c, _ in self.summands}


@dataclass(frozen=True)
class FfrtClassSet:
    fan: Fan
    classes: tuple[DivisorClass, ...]

    def coordinates(self) -> set[tuple[int, ...]]:
        return {c.free_part for c in self.classes}

    def __len__(self) -> int:
        return len(self.classes)


def _free_class_data(fan: Fan):
    if not rays_span_dual(fan):
        raise TorsionClassGroupError(
            "the rays do not generate M*, so Cl(Y) is not free of rank rays - rank"
        )
    cg = class_group(fan)
    return cg.group, [c.free_part for c in cg.ray_classes]


def _shift_counts(counts: dict, g: tuple[int, ...], q: int) -> dict:
    out: dict = {}
    for v, c in counts.items():
        for a in range(q):
            w = tuple(x + a * y for x, y in zip(v, g))
            out[w] = out.get(w, 0) + c
    return out


def _partial_sum_counts(first_values, gens, q):
    """Counts of ``sum a_sigma g_sigma`` with ``a_0`` drawn from ``first_values``.

    The vector ``a`` is enumerated ray by ray, merging equal partial sums, so
    the work grows with the number of distinct sums instead of ``q^rays``.
    """
    g0 = gens[0]
    counts = {tuple(a * y for y in g0): 1 for a in first_values}
    for g in gens[1:]:
        counts = _shift_counts(counts, g, q)
    return counts


def frobenius_decompose(
    fan: Fan,
    p: int,
    e: int,
    source: Union[DivisorClass, TorusDivisor, None] = None,
    *,
    cap: Optional[int] = None,
    workers: int = 1,
) -> FrobeniusDecomposition:
    """Decompose ``F^e_* O_Y(source)`` into rank-one reflexive summands.

    ``source`` is a divisor class or a torus-invariant divisor representing
    it (default: the structure sheaf).  ``cap`` bounds ``p^(e * rays)``, the
    number of vectors the decomposition ranges over.  With ``workers > 1``
    the range of the first coordinate is split across processes; partial
    counts are summed, so the result does not depend on ``workers``.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"p = {p!r} is not a prime")
    if not isinstance(e, int) or e < 0:
        raise InputError(f"e = {e!r} must be a nonnegative integer")
    cap = default_cap() if cap is None else cap
    group, gens = _free_class_data(fan)
    m = fan.nrays
    q = p**e
    if q**m > cap:
        raise EnumerationCapError(
            f"p^(e*rays) = {p}^{e * m} exceeds the enumeration cap {cap}"
        )

    if source is None:
        coeffs = (0,) * m
    elif isinstance(source, TorusDivisor):
        if source.fan != fan:
            raise InputError("source divisor belongs to a different fan")
        coeffs = source.coeffs
    else:
        coeffs = group.lift(source)
    s = group.rank
    base = tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(s))
    src = group.element(base, ())

    if m == 0:
        counts = {(0,) * s: 1}
    else:
        values = list(range(q))
        workers = max(1, min(int(workers), q))
        if workers == 1:
            counts = _partial_sum_counts(values, gens, q)
        else:
            chunks = [values[k::workers] for k in range(workers)]
            total: Counter = Counter()
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_partial_sum_counts, chunks, [gens] * workers, [q] * workers):
                    total.update(part)
            counts = dict(total)

    summands: dict[tuple[int, ...], int] = {}
    for v, c in counts.items():
        diff = [b - x for b, x in zip(base, v)]
        if all(x % q == 0 for x in diff):
            key = tuple(x // q for x in diff)
            summands[key] = summands.get(key, 0) + c
    ordered = tuple((group.element(k, ()), summands[k]) for k in sorted(summands))
    return FrobeniusDecomposition(fan, p, e, src, ordered)


def ffrt_class_set(fan: Fan, *, cap: Optional[int] = None) -> FfrtClassSet:
    """Lattice points of the zonotope ``{-sum t_sigma [D_sigma] : t in [0,1]^rays}``.

    Every candidate in the bounding box is tested by exact rational
    feasibility.
    """
    cap = default_cap() if cap is None else cap
    group, gens = _free_class_data(fan)
    s = group.rank
    lo = [sum(min(0, -g[j]) for g in gens) for j in range(s)]
    hi = [sum(max(0, -g[j]) for g in gens) for j in range(s)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > cap:
        raise EnumerationCapError(f"bounding box has {size} points, over the cap {cap}")
    a = [[-g[j] for g in gens] for j in range(s)]
    upper = [1] * len(gens)
    points = [
        x for x in product(*(range(l, h + 1) for l, h in zip(lo, hi)))
        if feasible(a, x, upper)
    ]
    return FfrtClassSet(fan, tuple(group.element(x, ()) for x in points))


def pn_multiplicity_oracle(n: int, p: int, e: int, k: int) -> int:
    """Number of ``a in {0, ..., p^e - 1}^(n+1)`` with ``sum a = k p^e``.

    On projective ``n``-space this is the multiplicity of ``O(-k)`` in
    ``F^e_* O``, computed without any class-group machinery.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    q = p**e
    target = k * q
    if target < 0 or target > (n + 1) * (q - 1):
        return 0
    ways = [1] + [0] * target
    for _ in range(n + 1):
        new = [0] * (target + 1)
        for total, w in enumerate(ways):
            if w:
                for a in range(min(q - 1, target - total) + 1):
                    new[total + a] += w
        ways = new
    return ways[target]
