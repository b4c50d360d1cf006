"""Fans of simplicial cones: validation, smoothness and spanning tests.

Rays live in the dual lattice ``M* = Z^rank``.  Only simplicial cones are
admitted; a declared cone whose rays are linearly dependent is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Mapping, Union

from ._lp import feasible
from .errors import FanError
from .lattice import IntegerMatrix, smith_normal_form, vector_gcd


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def ray_matrix(self, indices=None) -> IntegerMatrix:
        """Rays as rows (all of them, or those listed in ``indices``)."""
        idx = range(self.nrays) if indices is None else indices
        return IntegerMatrix.from_rows([self.rays[i] for i in idx], cols=self.rank)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    def rays_in_cones(self) -> set[int]:
        return {i for c in self.max_cones for i in c}


@dataclass(frozen=True)
class SmoothnessReport:
    per_cone: tuple[bool, ...]
    smooth: bool


def _rational_rank(rows) -> int:
    return smith_normal_form(IntegerMatrix.from_rows(rows)).rank if rows else 0


def validate_fan(
    raw: Union[Mapping, Fan],
    strict: bool = False,
    check_intersections: bool = False,
) -> Fan:
    """Build a validated :class:`Fan` from ``{"rank", "rays", "max_cones"}``.

    Rays are divided by the gcd of their coordinates; with ``strict=True`` a
    non-primitive ray is an error instead.  ``check_intersections`` runs the
    exhaustive pairwise face test, which is off by default.
    """
    if isinstance(raw, Fan):
        raw = raw.to_dict()
    try:
        rank = raw["rank"]
        raw_rays = raw["rays"]
        raw_cones = raw.get("max_cones", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise FanError(f"fan data must have 'rank', 'rays' and 'max_cones': {exc}") from None
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise FanError("rank must be a nonnegative integer")

    rays = []
    for k, r in enumerate(raw_rays):
        if not isinstance(r, (list, tuple)) or len(r) != rank:
            raise FanError(f"ray {k} must be an integer array of length {rank}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise FanError(f"ray {k} has non-integer coordinates")
        g = vector_gcd(r)
        if g == 0:
            raise FanError(f"ray {k} is zero")
        if g != 1:
            if strict:
                raise FanError(f"ray {k} = {list(r)} is not primitive")
            r = [x // g for x in r]
        rays.append(tuple(r))
    seen = {}
    for k, r in enumerate(rays):
        if r in seen:
            raise FanError(f"rays {seen[r]} and {k} coincide (after normalization)")
        seen[r] = k

    cones = []
    for k, c in enumerate(raw_cones):
        if not isinstance(c, (list, tuple)):
            raise FanError(f"cone {k} must be an array of ray indices")
        for i in c:
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(rays):
                raise FanError(f"cone {k} has out-of-range ray index {i!r}")
        if len(set(c)) != len(c):
            raise FanError(f"cone {k} repeats a ray index")
        if _rational_rank([rays[i] for i in c]) != len(c):
            raise FanError(f"cone {k} has linearly dependent rays")
        cones.append(tuple(c))

    fan = Fan(rank, tuple(rays), tuple(cones))
    if check_intersections:
        bad = intersection_violations(fan)
        if bad:
            i, j = bad[0]
            raise FanError(f"cones {i} and {j} do not meet in a common face")
    return fan


def load_fan(path, strict: bool = False, check_intersections: bool = False) -> Fan:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FanError(f"cannot read fan file {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise FanError("fan file must contain a JSON object")
    return validate_fan(raw, strict=strict, check_intersections=check_intersections)


def _cones_meet_in_face(fan: Fan, c1, c2) -> bool:
    # A bad point is a1.R1 = b2.R2 with a, b >= 0 and positive weight on some
    # ray outside the common face; normalize that weight to 1.
    common = set(c1) & set(c2)
    outside = [i for i in c1 if i not in common] + [j for j in c2 if j not in common]
    if not outside:
        return True
    cols = list(c1) + list(c2)
    a = [
        [fan.rays[i][x] for i in c1] + [-fan.rays[j][x] for j in c2]
        for x in range(fan.rank)
    ]
    norm = [1 if (k < len(c1) and c1[k] not in common) or (k >= len(c1) and c2[k - len(c1)] not in common)
            else 0 for k in range(len(cols))]
    return not feasible(a + [norm], [0] * fan.rank + [1])


def intersection_violations(fan: Fan) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i, j in combinations(range(len(fan.max_cones)), 2)
        if not _cones_meet_in_face(fan, fan.max_cones[i], fan.max_cones[j])
    ]


def _unimodular_rows(fan: Fan, indices) -> bool:
    """Whether the listed rays extend to a basis of ``M*``."""
    if not indices:
        return True
    snf = smith_normal_form(fan.ray_matrix(indices))
    return snf.rank == len(indices) and all(d == 1 for d in snf.d[:snf.rank])


def is_smooth(fan: Fan) -> SmoothnessReport:
    per_cone = tuple(_unimodular_rows(fan, c) for c in fan.max_cones)
    return SmoothnessReport(per_cone, all(per_cone))


def rays_span_dual(fan: Fan) -> bool:
    """Whether the rays generate ``M*`` as a group."""
    if fan.rank == 0:
        return True
    snf = smith_normal_form(fan.ray_matrix())
    return snf.rank == fan.rank and all(d == 1 for d in snf.d[:fan.rank])


# --------------------------------------------------------------------------
# Standard examples


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [tuple(i for i in range(n + 1) if i != k) for k in range(n + 1)]
    return validate_fan({"rank": n, "rays": rays, "max_cones": cones})


def affine_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return validate_fan({"rank": n, "rays": rays, "max_cones": [tuple(range(n))]})


def hirzebruch(a: int) -> Fan:
    return validate_fan({
        "rank": 2,
        "rays": [(1, 0), (0, 1), (-1, a), (0, -1)],
        "max_cones": [(0, 1), (1, 2), (2, 3), (3, 0)],
    })


def p1_times_p1() -> Fan:
    return validate_fan({
        "rank": 2,
        "rays": [(1, 0), (0, 1), (-1, 0), (0, -1)],
        "max_cones": [(0, 1), (1, 2), (2, 3), (3, 0)],
    })


def two_dim_cone(r1, r2) -> Fan:
    return validate_fan({"rank": 2, "rays": [r1, r2], "max_cones": [(0, 1)]})


def quadric_cone() -> Fan:
    """Affine cone ``xy = z^2`` (the A_1 singularity)."""
    return two_dim_cone((1, 1), (1, -1))


def a2_cone() -> Fan:
    """The A_2 singularity ``k[x^3, xy, y^3]``."""
    return two_dim_cone((1, 0), (1, 3))


def twisted_cubic_cone() -> Fan:
    """Affine cone over the twisted cubic, ``k[x^3, x^2y, xy^2, y^3]``."""
    return two_dim_cone((1, 0), (2, 3))
