"""Diagonal actions of finite abelian group schemes and weighted polynomial rings.

A finite abelian group ``A`` acts diagonally on ``k[x_1, ..., x_n]`` through
characters ``chi_i``.  At a point whose nonzero coordinates are indexed by
``T`` the stabilizer is the annihilator of ``<chi_i : i in T>``, so the action
is free there exactly when those weights generate ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

from .errors import DimensionError, EnumerationCapError, InputError, NotSmallError, SLConditionError
from .fan import Fan, validate_fan
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    element_of,
    generates_whole_group,
    hom_kernel,
)

DEFAULT_MONOMIAL_CAP = 10**6


@dataclass(frozen=True)
class DiagonalAction:
    group: FgAbelianGroup
    weights: tuple[GroupElement, ...]

    def __post_init__(self):
        if not self.group.is_finite:
            raise InputError(f"the acting group {self.group} is not finite")
        if not self.weights:
            raise InputError("a diagonal action needs at least one variable")
        for w in self.weights:
            if w.group != self.group:
                raise DimensionError("weight is not an element of the acting group")

    @classmethod
    def from_presentation(cls, factors: Sequence[int], weights: Sequence[Sequence[int]]) -> DiagonalAction:
        """Action of ``Z/f_1 + ... + Z/f_k`` with weights given in those coordinates."""
        group = FgAbelianGroup.from_invariants(factors)
        elems = []
        for w in weights:
            if len(w) != len(factors):
                raise DimensionError(
                    f"weight {list(w)} needs {len(factors)} coordinates, one per factor"
                )
            elems.append(element_of(group, w))
        return cls(group, tuple(elems))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def weight_sum(self) -> GroupElement:
        total = self.group.zero()
        for w in self.weights:
            total = total + w
        return total

    def is_faithful(self) -> bool:
        return generates_whole_group(self.group, self.weights)


@dataclass(frozen=True)
class SmallnessResult:
    level: int
    small: bool
    codim: Optional[int]  # None means the action is free everywhere
    witness: Optional[tuple[int, ...]]  # 1-based support of a non-free stratum


def non_free_codimension(action: DiagonalAction) -> tuple[Optional[int], Optional[tuple[int, ...]]]:
    """Codimension of the non-free locus and a support ``T`` realizing it."""
    n = action.nvars
    for size in range(n, -1, -1):
        for T in combinations(range(n), size):
            if not generates_whole_group(action.group, [action.weights[i] for i in T]):
                return n - size, tuple(i + 1 for i in T)
    return None, None


def is_n_small(action: DiagonalAction, n_level: int = 1) -> SmallnessResult:
    """Whether the action is free off a closed subset of codimension > ``n_level``."""
    if n_level < 0:
        raise InputError("level must be nonnegative")
    codim, witness = non_free_codimension(action)
    small = codim is None or codim >= n_level + 1
    return SmallnessResult(n_level, small, codim, witness)


def sl_n_smallness_check(action: DiagonalAction) -> SmallnessResult:
    if not action.weight_sum().is_zero():
        raise SLConditionError("the weights do not sum to zero, so the action is not in SL_n")
    return is_n_small(action, 1)


def _require_small(action: DiagonalAction) -> None:
    res = is_n_small(action, 1)
    if not res.small:
        raise NotSmallError(
            f"the action is not small: non-free locus of codimension {res.codim} "
            f"(support {list(res.witness)})"
        )


def invariant_ring_class_group(action: DiagonalAction) -> FgAbelianGroup:
    """Class group of ``k[x]^A``, the character group of ``A``.

    Only small actions are accepted.  The polynomial ring has trivial class
    group and its units are constants, so nothing is lost in the sequence
    relating the two class groups.
    """
    _require_small(action)
    return action.group


@dataclass(frozen=True)
class QuasiGorensteinResult:
    quasi_gorenstein: bool
    a_invariant: Optional[int]


def quasi_gorenstein_invariants(action: DiagonalAction) -> QuasiGorensteinResult:
    _require_small(action)
    if action.weight_sum().is_zero():
        return QuasiGorensteinResult(True, -action.nvars)
    return QuasiGorensteinResult(False, None)


def toric_model(action: DiagonalAction) -> Fan:
    """The affine toric variety ``Spec k[x]^A`` as a one-cone fan.

    Invariant monomials are the lattice points of ``M = ker(Z^n -> A)`` in the
    positive orthant; the cone's rays are the coordinate functionals written
    in a basis of ``M``, i.e. the rows of a basis matrix of ``M``.
    """
    basis = hom_kernel(action.group, action.weights)
    n = action.nvars
    rays = [[b[i] for b in basis] for i in range(n)]
    return validate_fan({"rank": n, "rays": rays, "max_cones": [list(range(n))]})


# --------------------------------------------------------------------------
# Weighted polynomial rings


@dataclass(frozen=True)
class WeightedPolyRing:
    s: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for w in self.weights:
            if len(w) != self.s:
                raise DimensionError(f"weight {list(w)} should have length {self.s}")

    @classmethod
    def of(cls, weights: Sequence[Sequence[int]]) -> WeightedPolyRing:
        weights = tuple(tuple(int(x) for x in w) for w in weights)
        if not weights:
            raise InputError("a polynomial ring needs at least one variable")
        return cls(len(weights[0]), weights)

    @classmethod
    def standard(cls, n: int) -> WeightedPolyRing:
        return cls(1, ((1,),) * n)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def weight_of(self, u: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(ui * w[j] for ui, w in zip(u, self.weights)) for j in range(self.s))


def a_invariant(ring: WeightedPolyRing) -> int:
    """``-sum w_i``: the canonical module of a weighted polynomial ring is ``B(-sum w_i)``."""
    if ring.s != 1:
        raise InputError("the a-invariant needs a Z-grading (s = 1)")
    if any(w[0] <= 0 for w in ring.weights):
        raise InputError("the a-invariant needs positive weights")
    return -sum(w[0] for w in ring.weights)


@dataclass(frozen=True)
class VeroneseReport:
    n: int
    d: int
    class_group: FgAbelianGroup
    quasi_gorenstein: bool
    a_invariant_polynomial: int
    a_invariant: Optional[int]  # of the Veronese ring in its own grading


def veronese_report(n: int, d: int) -> VeroneseReport:
    """Class group and Gorenstein data of the ``d``-th Veronese of ``k[x_1..x_n]``."""
    if n < 2:
        raise InputError("the Veronese statements need n >= 2")
    if d < 2:
        raise InputError("the Veronese degree d must be at least 2")
    action = DiagonalAction.from_presentation([d], [[1]] * n)
    cl = invariant_ring_class_group(action)
    if cl.invariants != (0, (d,)):  # pragma: no cover - guards the cross-route identity
        raise AssertionError(f"diagonal-action route gave {cl}, expected Z/{d}")
    a_poly = a_invariant(WeightedPolyRing.standard(n))
    qg = n % d == 0
    return VeroneseReport(n, d, cl, qg, a_poly, a_poly // d if qg else None)


# --------------------------------------------------------------------------
# Monomial ideals


@dataclass(frozen=True)
class MonomialIdealData:
    """Supports (1-based variable sets) of monomial generators."""

    generators: tuple[frozenset[int], ...]

    def __post_init__(self):
        for g in self.generators:
            if not g:
                raise InputError("a generator support must be nonempty")

    @classmethod
    def of(cls, supports) -> MonomialIdealData:
        gens = []
        for s in supports:
            fs = frozenset(int(i) for i in s)
            if fs not in gens:
                gens.append(fs)
        return cls(tuple(gens))


def monomial_ideal_height(ideal: MonomialIdealData, n_vars: int) -> int:
    """Height of the ideal: the smallest set of variables meeting every support."""
    for g in ideal.generators:
        if not all(1 <= i <= n_vars for i in g):
            raise DimensionError(f"support {sorted(g)} is not inside 1..{n_vars}")
    if not ideal.generators:
        return 0
    masks = [sum(1 << (i - 1) for i in g) for g in ideal.generators]
    for size in range(1, n_vars + 1):
        for combo in combinations(range(n_vars), size):
            hit = sum(1 << i for i in combo)
            if all(m & hit for m in masks):
                return size
    raise AssertionError("unreachable: the full variable set meets every support")  # pragma: no cover


def _exponents(nvars: int, max_degree: int, cap: int):
    count = comb(max_degree + nvars, nvars)
    if count > cap:
        raise EnumerationCapError(
            f"{count} monomials of degree <= {max_degree} in {nvars} variables exceed the cap {cap}"
        )

    def rec(prefix, left, remaining):
        if remaining == 1:
            for a in range(left + 1):
                yield prefix + (a,)
            return
        for a in range(left + 1):
            yield from rec(prefix + (a,), left - a, remaining - 1)

    if nvars == 0:
        yield ()
        return
    yield from rec((), max_degree, nvars)


def degree_ideal(
    ring: WeightedPolyRing,
    lam: Sequence[int],
    degree_cap: int,
    *,
    cap: int = DEFAULT_MONOMIAL_CAP,
) -> MonomialIdealData:
    """Supports of the nonconstant monomials of weight ``lam`` and degree <= ``degree_cap``."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != ring.s:
        raise DimensionError(f"weight {list(lam)} should have length {ring.s}")
    supports = sorted(
        {
            tuple(i + 1 for i, ui in enumerate(u) if ui)
            for u in _exponents(ring.nvars, degree_cap, cap)
            if any(u) and ring.weight_of(u) == lam
        },
        key=lambda t: (len(t), t),
    )
    return MonomialIdealData.of(supports)


# --------------------------------------------------------------------------
# Surjective gradings


@dataclass(frozen=True)
class SurjectivityReport:
    surjective: bool
    bound: int
    degree_cap: int
    pairs_checked: int
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    missing_monomial: Optional[tuple[int, ...]] = None


def semigroup_sample(gens: Sequence[Sequence[int]], bound: int) -> list[tuple[int, ...]]:
    """Elements of the monoid generated by ``gens`` with coordinates in ``[-bound, bound]``."""
    gens = [tuple(g) for g in gens]
    s = len(gens[0])
    zero = (0,) * s
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(x + y for x, y in zip(v, g))
                if w not in seen and all(abs(x) <= bound for x in w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def surjective_grading_check(
    ring: WeightedPolyRing,
    sigma_gens: Sequence[Sequence[int]],
    bound: int,
    degree_cap: Optional[int] = None,
    *,
    cap: int = DEFAULT_MONOMIAL_CAP,
) -> SurjectivityReport:
    """Bounded check that ``B_l (x) B_l' -> B_{l+l'}`` is onto.

    ``l`` and ``l'`` range over the monoid generated by ``sigma_gens``,
    truncated to coordinates in ``[-bound, bound]``; weight spaces are
    enumerated up to total degree ``degree_cap`` (default ``2 * bound``).
    Monomials span every weight space, so the map is onto iff each monomial
    of weight ``l + l'`` is a product of monomials of weights ``l`` and ``l'``.
    This is a verifier for the sampled range, not a proof.
    """
    if not sigma_gens:
        raise InputError("sigma needs at least one generator")
    if bound <= 0:
        raise InputError("bound must be positive")
    for g in sigma_gens:
        if len(g) != ring.s:
            raise DimensionError(f"generator {list(g)} should have length {ring.s}")
    degree_cap = 2 * bound if degree_cap is None else degree_cap
    by_weight: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for u in _exponents(ring.nvars, degree_cap, cap):
        by_weight.setdefault(ring.weight_of(u), []).append(u)

    sample = semigroup_sample(sigma_gens, bound)
    checked = 0
    for lam, lam2 in product(sample, repeat=2):
        checked += 1
        left = by_weight.get(lam, [])
        target = tuple(x + y for x, y in zip(lam, lam2))
        for u in by_weight.get(target, []):
            # u factors iff some weight-lam monomial divides it
            if not any(all(v <= w for v, w in zip(f, u)) for f in left):
                return SurjectivityReport(False, bound, degree_cap, checked, (lam, lam2), u)
    return SurjectivityReport(True, bound, degree_cap, checked)
