import pytest

from oracles import cokernel_invariants
from torix.divisors import (
    TorusDivisor,
    canonical_divisor,
    cartier_data,
    class_group,
    class_of,
    div_matrix,
    gorenstein_report,
    is_cartier,
    is_principal,
    multisection_class_group,
    principal_witness,
)
from torix.errors import ConeCoverageError, DimensionError
from torix.fan import (
    a2_cone,
    hirzebruch,
    p1_times_p1,
    projective_space,
    quadric_cone,
    twisted_cubic_cone,
    validate_fan,
)


def fan_oracle(fan):
    rows = [list(r) for r in fan.rays]
    return cokernel_invariants(rows, fan.nrays)


def test_div_matrix():
    assert div_matrix(projective_space(1)).to_lists() == [[1], [-1]]
    assert div_matrix(projective_space(2)).to_lists() == [[1, 0], [0, 1], [-1, -1]]
    assert div_matrix(quadric_cone()).to_lists() == [[1, 1], [1, -1]]


@pytest.mark.parametrize(
    "fan, expected",
    [
        (projective_space(2), (1, ())),
        (p1_times_p1(), (2, ())),
        (hirzebruch(0), (2, ())),
        (hirzebruch(1), (2, ())),
        (hirzebruch(2), (2, ())),
        (hirzebruch(3), (2, ())),
        (quadric_cone(), (0, (2,))),
        (twisted_cubic_cone(), (0, (3,))),
        (a2_cone(), (0, (3,))),
    ],
)
def test_class_groups(fan, expected):
    assert class_group(fan).group.invariants == expected
    assert fan_oracle(fan) == expected


def test_ray_classes():
    cg = class_group(projective_space(2))
    assert [c.free_part for c in cg.ray_classes] == [(1,), (1,), (1,)]
    cg = class_group(quadric_cone())
    assert [c.torsion_part for c in cg.ray_classes] == [(1,), (1,)]


def test_class_of():
    q = quadric_cone()
    assert class_of(TorusDivisor.of(q, (0, 0))).is_zero()
    assert class_of(TorusDivisor.of(q, (1, 0))).torsion_part == (1,)
    assert class_of(TorusDivisor.of(q, (1, 1))).is_zero()
    with pytest.raises(DimensionError):
        TorusDivisor.of(q, (1, 2, 3))


def test_principal():
    q = quadric_cone()
    assert principal_witness(TorusDivisor.of(q, (1, 1))) == (1, 0)
    assert principal_witness(TorusDivisor.of(q, (1, 0))) is None
    f = hirzebruch(2)
    assert principal_witness(TorusDivisor.of(f, (0,) * 4)) == (0, 0)
    assert is_principal(TorusDivisor.of(f, (1, 0, -1, 0)))


def test_cartier():
    assert is_cartier(TorusDivisor.of(projective_space(2), (1, 0, 0)))
    q = quadric_cone()
    assert not is_cartier(TorusDivisor.of(q, (1, 0)))
    assert cartier_data(TorusDivisor.of(q, (2, 0))) == [(-1, -1)]


def test_cartier_requires_covered_rays():
    fan = validate_fan({"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1]]})
    with pytest.raises(ConeCoverageError):
        cartier_data(TorusDivisor.of(fan, (0, 0, 0)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canonical_projective(n):
    fan = projective_space(n)
    k = canonical_divisor(fan)
    assert k.coeffs == (-1,) * (n + 1)
    assert class_of(k).free_part == (-(n + 1),)


def test_gorenstein_reports():
    rep = gorenstein_report(quadric_cone())
    assert rep.canonical_is_principal and rep.canonical_is_cartier
    rep = gorenstein_report(twisted_cubic_cone())
    assert not rep.canonical_is_principal
    assert rep.per_cone == (False,)
    rep = gorenstein_report(a2_cone())
    assert rep.canonical_is_principal
    rep = gorenstein_report(projective_space(2))
    assert rep.canonical_is_cartier and not rep.canonical_is_principal


def test_gorenstein_per_cone_differs_from_principal():
    # P^1 x P^1: K is Cartier on every chart but not globally principal.
    rep = gorenstein_report(p1_times_p1())
    assert rep.per_cone == (True,) * 4
    assert rep.principal_witness is None


def test_multisection():
    p1 = projective_space(1)
    res = multisection_class_group(p1, [TorusDivisor.of(p1, (1, 0))])
    assert res.cl_X.is_trivial and res.kernel_basis == ()
    res = multisection_class_group(p1, [TorusDivisor.of(p1, (2, 0))])
    assert res.cl_X.invariants == (0, (2,))
    res = multisection_class_group(p1, [TorusDivisor.of(p1, (1, 0)), TorusDivisor.of(p1, (0, 1))])
    assert res.cl_X.is_trivial
    assert res.kernel_basis == ((1, -1),)
    assert res.kernel.invariants == (1, ())
    with pytest.raises(DimensionError):
        multisection_class_group(p1, [])


def test_multisection_on_hirzebruch():
    f = hirzebruch(1)
    divs = [TorusDivisor.of(f, (1, 0, 0, 0)), TorusDivisor.of(f, (0, 1, 0, 0))]
    res = multisection_class_group(f, divs)
    # two ray classes of F_1 already form a basis of Z^2
    assert res.cl_X.is_trivial
    assert res.kernel_basis == ()
