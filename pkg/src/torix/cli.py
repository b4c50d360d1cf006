"""Command-line front end.

Every subcommand prints one report: ``command``, ``inputs``, ``results`` and
``warnings`` (plus ``error`` on failure).  ``--json`` gives the machine
format, which is the stable contract; the default is a plain text rendering.
Exit status: 0 on success, 1 on domain errors, 2 on input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .divisors import (
    TorusDivisor,
    canonical_divisor,
    cartier_data,
    class_group,
    class_of,
    gorenstein_report,
    multisection_class_group,
    principal_witness,
)
from .errors import InputError, TorixError
from .fan import is_smooth, load_fan, rays_span_dual
from .frobenius import default_cap, ffrt_class_set, frobenius_decompose
from .graded import (
    DiagonalAction,
    MonomialIdealData,
    WeightedPolyRing,
    invariant_ring_class_group,
    is_n_small,
    monomial_ideal_height,
    quasi_gorenstein_invariants,
    surjective_grading_check,
    veronese_report,
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# parsing helpers


def parse_int_list(text: str, what: str = "value") -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_vectors(text: str, what: str = "value") -> list[list[int]]:
    """``"1,2;3,4"`` -> ``[[1, 2], [3, 4]]``."""
    text = text.strip()
    if not text:
        return []
    return [parse_int_list(part, what) for part in text.split(";")]


def _group_json(g) -> dict:
    return {"rank": g.rank, "torsion": list(g.torsion), "description": str(g)}


def _element_json(x) -> dict:
    return {"free": list(x.free_part), "torsion": list(x.torsion_part)}


def _opt(v):
    return None if v is None else list(v)


# --------------------------------------------------------------------------
# commands; each returns (inputs, results, warnings)


def _load(args):
    fan = load_fan(args.fan, strict=args.strict, check_intersections=args.check_intersections)
    return fan, {"fan": fan.to_dict()}


def cmd_classgroup(args):
    fan, inputs = _load(args)
    cg = class_group(fan)
    sm = is_smooth(fan)
    results = {
        "class_group": _group_json(cg.group),
        "ray_classes": [_element_json(c) for c in cg.ray_classes],
        "rays_span_dual": rays_span_dual(fan),
        "smooth": sm.smooth,
        "smooth_per_cone": list(sm.per_cone),
    }
    return inputs, results, []


def cmd_canonical(args):
    fan, inputs = _load(args)
    k = canonical_divisor(fan)
    rep = gorenstein_report(fan)
    results = {
        "divisor": list(k.coeffs),
        "class": _element_json(rep.canonical_class),
        "principal": rep.canonical_is_principal,
        "principal_witness": _opt(rep.principal_witness),
        "cartier": rep.canonical_is_cartier,
        "quasi_gorenstein_per_cone": list(rep.per_cone),
    }
    return inputs, results, []


def _divisor(fan, text):
    coeffs = parse_int_list(text, "divisor")
    if len(coeffs) != fan.nrays:
        raise InputError(f"divisor needs {fan.nrays} coefficients, got {len(coeffs)}")
    return TorusDivisor.of(fan, coeffs)


def cmd_cartier(args):
    fan, inputs = _load(args)
    d = _divisor(fan, args.divisor)
    inputs["divisor"] = list(d.coeffs)
    per_cone = cartier_data(d)
    results = {
        "cartier": all(m is not None for m in per_cone),
        "per_cone": [
            {"cone": list(c), "cartier": m is not None, "m": _opt(m)}
            for c, m in zip(fan.max_cones, per_cone)
        ],
        "principal": principal_witness(d) is not None,
        "principal_witness": _opt(principal_witness(d)),
        "class": _element_json(class_of(d)),
    }
    return inputs, results, []


def _cap(args) -> int:
    if args.cap is not None:
        if args.cap <= 0:
            raise InputError("--cap must be positive")
        return args.cap
    return default_cap()


def cmd_frobenius(args):
    fan, inputs = _load(args)
    cap = _cap(args)
    inputs.update({"p": args.p, "e": args.e, "cap": cap})
    source = None
    if args.source_class is not None:
        coords = parse_int_list(args.source_class, "class")
        inputs["class"] = coords
        if rays_span_dual(fan):
            group = class_group(fan).group
            if len(coords) != group.rank:
                raise InputError(f"class needs {group.rank} coordinates, got {len(coords)}")
            source = group.element(coords, ())
    dec = frobenius_decompose(fan, args.p, args.e, source, cap=cap, workers=args.workers)
    results = {
        "p": dec.p,
        "e": dec.e,
        "total_rank": dec.total_rank,
        "source": list(dec.source.free_part),
        "summands": [{"class": list(c.free_part), "multiplicity": m} for c, m in dec.summands],
    }
    return inputs, results, []


def cmd_ffrt_set(args):
    fan, inputs = _load(args)
    cap = _cap(args)
    inputs["cap"] = cap
    classes = ffrt_class_set(fan, cap=cap)
    results = {"count": len(classes), "classes": [list(c.free_part) for c in classes.classes]}
    return inputs, results, []


def cmd_multisection(args):
    fan, inputs = _load(args)
    divisors = [_divisor(fan, t) for t in args.divisor]
    inputs["divisors"] = [list(d.coeffs) for d in divisors]
    res = multisection_class_group(fan, divisors)
    results = {
        "class_group_Y": _group_json(class_group(fan).group),
        "divisor_classes": [_element_json(class_of(d)) for d in divisors],
        "kernel": _group_json(res.kernel),
        "kernel_basis": [list(v) for v in res.kernel_basis],
        "cl_X": _group_json(res.cl_X),
    }
    return inputs, results, []


def cmd_action(args):
    factors = parse_int_list(args.group, "group")
    weights = parse_vectors(args.weights, "weights")
    if not factors:
        raise InputError("--group needs at least one invariant factor")
    if any(f < 1 for f in factors):
        raise InputError("invariant factors of a finite group must be positive")
    action = DiagonalAction.from_presentation(factors, weights)
    inputs = {"group": factors, "weights": weights}
    results: dict = {"group": _group_json(action.group)}
    if args.mode == "small":
        inputs["level"] = args.level
        res = is_n_small(action, args.level)
        results.update({
            "small": res.small,
            "level": res.level,
            "non_free_codimension": res.codim,
            "non_free_support": _opt(res.witness),
            "faithful": action.is_faithful(),
            "weights_sum_to_zero": action.weight_sum().is_zero(),
        })
    elif args.mode == "classgroup":
        results["class_group"] = _group_json(invariant_ring_class_group(action))
    else:
        res = quasi_gorenstein_invariants(action)
        results.update({
            "weight_sum": _element_json(action.weight_sum()),
            "quasi_gorenstein": res.quasi_gorenstein,
            "a_invariant": res.a_invariant,
        })
    return inputs, results, []


def cmd_veronese(args):
    rep = veronese_report(args.n, args.d)
    results = {
        "class_group": _group_json(rep.class_group),
        "quasi_gorenstein": rep.quasi_gorenstein,
        "a_invariant_polynomial_ring": rep.a_invariant_polynomial,
        "a_invariant_divisible_by_d": rep.a_invariant_polynomial % rep.d == 0,
        "a_invariant": rep.a_invariant,
    }
    return {"n": args.n, "d": args.d}, results, []


def cmd_height(args):
    supports = parse_vectors(args.supports, "supports")
    ideal = MonomialIdealData.of(supports)
    warnings = []
    if not ideal.generators:
        warnings.append("empty generator list: the zero ideal has height 0")
    h = monomial_ideal_height(ideal, args.nvars)
    inputs = {"supports": [sorted(g) for g in ideal.generators], "nvars": args.nvars}
    return inputs, {"height": h}, warnings


def cmd_surjcheck(args):
    ring = WeightedPolyRing.of(parse_vectors(args.weights, "weights"))
    sigma = parse_vectors(args.sigma, "sigma")
    rep = surjective_grading_check(ring, sigma, args.bound, args.degree_cap)
    inputs = {
        "weights": [list(w) for w in ring.weights],
        "sigma": sigma,
        "bound": args.bound,
        "degree_cap": rep.degree_cap,
    }
    results = {
        "surjective": rep.surjective,
        "pairs_checked": rep.pairs_checked,
        "witness": None if rep.witness is None else [list(w) for w in rep.witness],
        "missing_monomial": _opt(rep.missing_monomial),
    }
    warnings = [f"bounded check: weights with coordinates in [-{args.bound}, {args.bound}], "
                f"monomials of degree <= {rep.degree_cap}"]
    return inputs, results, warnings


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    fan_opts = argparse.ArgumentParser(add_help=False)
    fan_opts.add_argument("fan", help="fan file (JSON with rank, rays, max_cones)")
    fan_opts.add_argument("--strict", action="store_true", help="reject non-primitive rays")
    fan_opts.add_argument("--check-intersections", action="store_true",
                          help="verify that cones meet along common faces")

    parser = _ArgumentParser(prog="torix", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"torix {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("classgroup", parents=[common, fan_opts], help="class group and ray classes")
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("canonical", parents=[common, fan_opts], help="canonical divisor data")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("cartier", parents=[common, fan_opts], help="Cartier test for a divisor")
    p.add_argument("--divisor", required=True, help="coefficients a1,...,ak in ray order")
    p.set_defaults(func=cmd_cartier)

    p = sub.add_parser("frobenius", parents=[common, fan_opts], help="decompose F^e_* O(c)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--class", dest="source_class", help="source class c1,...,cs (default 0)")
    p.add_argument("--cap", type=int, help="enumeration cap (default: $TORIX_CAP or 10^8)")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("ffrt-set", parents=[common, fan_opts], help="finite FFRT class set")
    p.add_argument("--cap", type=int, help="enumeration cap (default: $TORIX_CAP or 10^8)")
    p.set_defaults(func=cmd_ffrt_set)

    p = sub.add_parser("multisection", parents=[common, fan_opts],
                       help="class group of a multisection ring")
    p.add_argument("--divisor", action="append", required=True,
                   help="divisor coefficients; repeat for each divisor")
    p.set_defaults(func=cmd_multisection)

    p = sub.add_parser("action", parents=[common], help="diagonal finite abelian actions")
    p.add_argument("mode", choices=["small", "classgroup", "qgor"])
    p.add_argument("--group", required=True, help="invariant factors t1,t2,...")
    p.add_argument("--weights", required=True, help='per-variable weights "w11,w12;w21,w22;..."')
    p.add_argument("--level", type=int, default=1, help="smallness level n (default 1)")
    p.set_defaults(func=cmd_action)

    p = sub.add_parser("veronese", parents=[common], help="Veronese subring of k[x_1..x_n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_veronese)

    p = sub.add_parser("height", parents=[common], help="height of a monomial ideal")
    p.add_argument("--supports", required=True, help='generator supports "1,2;3,4" (1-based)')
    p.add_argument("--nvars", type=int, required=True)
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("surjcheck", parents=[common], help="bounded surjective-grading check")
    p.add_argument("--weights", required=True, help='per-variable degrees "1;2" or "1,0;0,1"')
    p.add_argument("--sigma", required=True, help='monoid generators "1;-1"')
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--degree-cap", type=int, help="max total degree (default 2*bound)")
    p.set_defaults(func=cmd_surjcheck)
    return parser


def render_text(report: dict) -> str:
    lines: list[str] = []

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={json.dumps(v)}" for k, v in item.items()))
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")

    for k, v in report.items():
        emit(k, v, 0)
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    report: dict = {"command": args.command if args.command != "action" else f"action {args.mode}"}
    try:
        inputs, results, warnings = args.func(args)
        report.update({"inputs": inputs, "results": results, "warnings": warnings})
        status = 0
    except TorixError as exc:
        report.update({
            "inputs": None,
            "results": None,
            "warnings": [],
            "error": {"kind": exc.kind, "message": str(exc)},
        })
        status = 2 if isinstance(exc, InputError) else 1
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
