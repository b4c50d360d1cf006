"""Torus-invariant divisors and the class group ``Cl(Y) = W / div(M)``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import ConeCoverageError, DimensionError
from .fan import Fan
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    IntegerMatrix,
    cokernel,
    element_of,
    hom_kernel,
    quotient_group,
    solve_integral,
)

# A divisor class is simply an element of the fan's class group.
DivisorClass = GroupElement


@dataclass(frozen=True)
class TorusDivisor:
    fan: Fan
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.fan.nrays:
            raise DimensionError(
                f"divisor has {len(self.coeffs)} coefficients, fan has {self.fan.nrays} rays"
            )

    @classmethod
    def of(cls, fan: Fan, coeffs: Sequence[int]) -> TorusDivisor:
        return cls(fan, tuple(int(c) for c in coeffs))

    def __add__(self, other: TorusDivisor) -> TorusDivisor:
        return TorusDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TorusDivisor:
        return TorusDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> TorusDivisor:
        return TorusDivisor(self.fan, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__


@dataclass(frozen=True)
class ClassGroup:
    group: FgAbelianGroup
    ray_classes: tuple[GroupElement, ...]


def div_matrix(fan: Fan) -> IntegerMatrix:
    """Matrix of ``div: M -> W``; row ``sigma`` is the ray ``m*_sigma``."""
    return fan.ray_matrix()


@lru_cache(maxsize=256)
def class_group(fan: Fan) -> ClassGroup:
    # lru_cache is safe under concurrent first access: the computation is
    # deterministic, so a duplicate evaluation stores an equal value.
    group = cokernel(div_matrix(fan))
    basis = [tuple(int(i == j) for j in range(fan.nrays)) for i in range(fan.nrays)]
    return ClassGroup(group, tuple(element_of(group, e) for e in basis))


def class_of(d: TorusDivisor) -> DivisorClass:
    return element_of(class_group(d.fan).group, d.coeffs)


def divisor_of_class(fan: Fan, c: DivisorClass) -> TorusDivisor:
    """A torus-invariant representative of ``c``."""
    return TorusDivisor(fan, class_group(fan).group.lift(c))


def principal_witness(d: TorusDivisor) -> Optional[tuple[int, ...]]:
    """``m`` with ``div m = d``, or ``None`` when ``d`` is not principal."""
    return solve_integral(div_matrix(d.fan), d.coeffs)


def is_principal(d: TorusDivisor) -> bool:
    return class_of(d).is_zero()


def cartier_data(d: TorusDivisor) -> list[Optional[tuple[int, ...]]]:
    """Per maximal cone, ``m`` with ``<m, m*_sigma> = -a_sigma`` on the cone's rays.

    Raises when some ray lies in no maximal cone, since the per-cone test says
    nothing about such a ray.
    """
    fan = d.fan
    missing = set(range(fan.nrays)) - fan.rays_in_cones()
    if missing:
        raise ConeCoverageError(f"rays {sorted(missing)} lie in no maximal cone")
    out = []
    for cone in fan.max_cones:
        rhs = [-d.coeffs[i] for i in cone]
        out.append(solve_integral(fan.ray_matrix(cone), rhs) if cone else ())
    return out


def is_cartier(d: TorusDivisor) -> bool:
    return all(m is not None for m in cartier_data(d))


def canonical_divisor(fan: Fan) -> TorusDivisor:
    return TorusDivisor(fan, (-1,) * fan.nrays)


@dataclass(frozen=True)
class GorensteinReport:
    canonical_class: DivisorClass
    per_cone: tuple[bool, ...]
    canonical_is_cartier: bool
    canonical_is_principal: bool
    principal_witness: Optional[tuple[int, ...]]


def gorenstein_report(fan: Fan) -> GorensteinReport:
    """Gorenstein data of the canonical divisor ``-sum D_sigma``.

    ``per_cone[i]`` says whether ``K`` restricted to the affine chart of cone
    ``i`` is principal there; ``canonical_is_cartier`` is their conjunction.
    """
    k = canonical_divisor(fan)
    per_cone = tuple(m is not None for m in cartier_data(k))
    witness = principal_witness(k)
    return GorensteinReport(
        canonical_class=class_of(k),
        per_cone=per_cone,
        canonical_is_cartier=all(per_cone),
        canonical_is_principal=witness is not None,
        principal_witness=witness,
    )


@dataclass(frozen=True)
class MultisectionClassGroup:
    kernel: FgAbelianGroup
    kernel_basis: tuple[tuple[int, ...], ...]
    cl_X: FgAbelianGroup


def multisection_class_group(fan: Fan, divisors: Sequence[TorusDivisor]) -> MultisectionClassGroup:
    """Kernel and cokernel of ``beta: Z^s -> Cl(Y)``, ``e_i -> [D_i]``.

    By the four-term exact sequence the cokernel is the class group of the
    multisection ring and the kernel is the group of degrees carrying units.
    """
    if not divisors:
        raise DimensionError("need at least one divisor")
    for d in divisors:
        if d.fan != fan:
            raise DimensionError("divisor belongs to a different fan")
    cl = class_group(fan).group
    images = [class_of(d) for d in divisors]
    basis = hom_kernel(cl, images)
    return MultisectionClassGroup(
        kernel=cokernel(IntegerMatrix.zeros(len(basis), 0)),
        kernel_basis=tuple(basis),
        cl_X=quotient_group(cl, images),
    )
