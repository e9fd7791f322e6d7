"""Command-line surface.

Subcommands: ``types``, ``twist``, ``split-degree``, ``orbit``, ``data``,
``global``.  Output is deterministic text (default) or JSON
(``--format json``); rationals serialize as "num/den" strings so no float
ever appears.  Exit codes: 0 success, 2 usage or validation error, 3
enumeration cap exceeded.  The environment variable ``PARAHORIC_CAP``
overrides the default enumeration caps; ``--cap`` overrides both.

Points are given and reported by their simple-root values
``<alpha_1, x>, ..., <alpha_r, x>``; for the rank-one worked example this is
the usual coordinate on the interval [0, 1].  For a trivial action the
``types`` command measures the local types at the equidistant base point
``<alpha_i, x> = 1/e`` (the base of the rank-one worked example); pass
``--point`` to choose any other point on the (1/e)-grid, e.g. ``--point 0``
for the standard hyperspecial base.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .alcove import (
    apartment_orbit_types,
    min_split_degree,
    point_from_root_values,
    reduce_to_alcove,
    simple_root_values,
    type_to_alcove,
    vertex_prime_data,
)
from .cohomology import (
    GammaAction,
    LocalType,
    MODE_LATTICE,
    cocycle_of,
    h1_elements,
    local_types,
    trivial_action,
)
from .exactalg import QZVector
from .rootdata import (
    EnumerationCapError,
    LatticeAutomorphism,
    build_root_datum,
    diagram_automorphism,
)
from .slmodel import (
    sl_local_types,
    sl_torus_h1,
    standard_involution,
    torus_action_matrix,
    variant_involution,
)

SCHEMA_VERSION = "1"
DEFAULT_CAP = 10 ** 6
DEFAULT_PRODUCT_CAP = 10 ** 4

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec_str(v: Sequence[Fraction]) -> List[str]:
    return [frac_str(x) for x in v]


def vec_text(v: Sequence[Fraction]) -> str:
    return "[" + ", ".join(vec_str(v)) + "]"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {s!r}") from exc


def parse_point(s: str, rank: int) -> Tuple[Fraction, ...]:
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != rank:
        raise UsageError(f"--point needs {rank} comma-separated root values")
    return tuple(parse_fraction(p) for p in parts)


def emit(report: dict, fmt: str, text_lines: List[str]) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# group spec handling
# ---------------------------------------------------------------------------

def parse_group(group: str, rank: Optional[int]) -> Tuple[str, int]:
    g = group.strip()
    if len(g) > 1 and g[1:].isdigit():
        label, r = g[0].upper(), int(g[1:])
        if rank is not None and rank != r:
            raise UsageError(f"--group {group} conflicts with --rank {rank}")
        return label, r
    if rank is None:
        raise UsageError("--rank is required when --group is a bare letter")
    return g.upper(), rank


def parse_perm(s: str, rank: int) -> Tuple[int, ...]:
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != rank:
        raise UsageError(f"--perm needs {rank} entries (1-indexed images)")
    try:
        perm = tuple(int(p) - 1 for p in parts)
    except ValueError as exc:
        raise UsageError("--perm entries must be integers") from exc
    if sorted(perm) != list(range(rank)):
        raise UsageError("--perm is not a permutation of the nodes")
    return perm


def action_spec(kind: str, variant: Optional[str] = None,
                perm: Optional[Sequence[int]] = None) -> dict:
    out = {"kind": kind}
    if variant is not None:
        out["variant"] = variant
    if perm is not None:
        out["permutation"] = [p + 1 for p in perm]
    return out


# ---------------------------------------------------------------------------
# the types computation shared by `types`, `twist` and `global`
# ---------------------------------------------------------------------------

def compute_types(
    label: str,
    rank: int,
    order: int,
    action_kind: str,
    perm: Optional[Tuple[int, ...]] = None,
    point: Optional[Tuple[Fraction, ...]] = None,
    cap: int = DEFAULT_CAP,
) -> dict:
    """Full type report for one branch point; raises UsageError on invalid
    specs and EnumerationCapError on cap breaches."""
    datum = build_root_datum(label, rank)
    if order < 1:
        raise UsageError("--order must be a positive integer")

    if action_kind == "trivial":
        action = trivial_action(rank, order)
        if point is None:
            base = point_from_root_values(
                datum, tuple(Fraction(1, order) for _ in range(rank))
            )
        else:
            base = point_from_root_values(datum, point)
        base, _ = reduce_to_alcove(datum, base)
        classes = h1_elements(datum, action, cap=cap)
        try:
            types = local_types(datum, action, base=base, cap=cap)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        cocycles = [cocycle_of(t.orbit_representative, action) for t in types]
        base_values = simple_root_values(datum, base)
        extra = {
            "base_point": {
                "root_values": vec_str(base_values),
                "coroot_coordinates": vec_str(base),
            }
        }
    elif action_kind in ("sl-J", "sl-Jprime"):
        if label != "A":
            raise UsageError("sl involutions are only defined for type A")
        if order != 2:
            raise UsageError("sl involutions act through Gamma of order 2")
        if point is not None:
            raise UsageError("--point applies only to trivial actions")
        n = rank + 1
        spec = standard_involution(n) if action_kind == "sl-J" else variant_involution(n)
        classes = sl_torus_h1(n, spec)
        types = sl_local_types(n, spec)
        G = torus_action_matrix(spec)
        diag_action = GammaAction(2, LatticeAutomorphism(G, 2), MODE_LATTICE)
        cocycles = [cocycle_of(t.orbit_representative, diag_action) for t in types]
        extra = {"matrix_size": n}
    elif action_kind == "diagram":
        if perm is None:
            raise UsageError("--perm is required for a diagram action")
        if point is not None:
            raise UsageError("--point applies only to trivial actions")
        aut = diagram_automorphism(datum, perm)
        if order % aut.order != 0:
            raise UsageError(
                f"the permutation has order {aut.order}, which must divide --order"
            )
        action = GammaAction(order, aut, MODE_LATTICE)
        classes = h1_elements(datum, action, cap=cap)
        if classes.structure.order == 1:
            types = [LocalType(classes.representatives[0], 1, 0)]
            cocycles = [cocycle_of(types[0].orbit_representative, action)]
        else:
            raise UsageError(
                "type enumeration for a pinned diagram action needs Weyl-lift "
                "data that has no general recipe; use an sl involution for "
                "type A, or a trivial action"
            )
        extra = {}
    else:
        raise UsageError(f"unknown action kind {action_kind!r}")

    order_h1 = classes.structure.order
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "types",
        "group": {"label": label, "rank": rank},
        "order": order,
        "action": action_spec(
            action_kind if not action_kind.startswith("sl-") else "sl-involution",
            variant={"sl-J": "J", "sl-Jprime": "J-prime"}.get(action_kind),
            perm=perm,
        ),
        "torus_h1": {
            "order": order_h1,
            "invariant_factors": list(classes.structure.invariant_factors),
            "gamma0": classes.gamma0_choice,
        },
        "class_representatives": [vec_str(t) for t in classes.representatives],
        "types": [
            {
                "index": t.index,
                "representative": vec_str(t.orbit_representative),
                "orbit_size": t.orbit_size,
                "cocycle": {str(i): vec_str(v) for i, v in cocycles[t.index].items()},
            }
            for t in types
        ],
        "type_count": len(types),
    }
    report.update(extra)
    return report


def types_text(report: dict) -> List[str]:
    lines = [
        f"group: {report['group']['label']}{report['group']['rank']}",
        f"order: {report['order']}",
        f"action: {_action_text(report['action'])}",
    ]
    if "base_point" in report:
        lines.append(
            "base point (root values): "
            + "[" + ", ".join(report["base_point"]["root_values"]) + "]"
        )
    inv = report["torus_h1"]["invariant_factors"]
    lines.append(
        f"H1(Gamma, T): order {report['torus_h1']['order']}, "
        f"invariant factors {inv if inv else '[]'}"
    )
    lines.append(
        "classes: " + (", ".join(
            "[" + ", ".join(rep) + "]" for rep in report["class_representatives"]
        ) if report["class_representatives"] else "(none)")
    )
    for t in report["types"]:
        cocycle = ", ".join(
            f"{i}: [" + ", ".join(v) + "]" for i, v in sorted(t["cocycle"].items(), key=lambda kv: int(kv[0]))
        )
        lines.append(
            f"type {t['index']}: rep [" + ", ".join(t["representative"]) + "]"
            + f", orbit size {t['orbit_size']}, cocycle {{{cocycle}}}"
        )
    lines.append(f"types: {report['type_count']}")
    return lines


def _action_text(action: dict) -> str:
    kind = action["kind"]
    if kind == "sl-involution":
        return f"sl-involution {action.get('variant')}"
    if kind == "diagram":
        return "diagram " + ",".join(str(p) for p in action.get("permutation", []))
    return kind


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_types(args) -> int:
    label, rank = parse_group(args.group, args.rank)
    point = parse_point(args.point, rank) if args.point else None
    perm = parse_perm(args.perm, rank) if args.perm else None
    report = compute_types(
        label, rank, args.order, args.action, perm=perm, point=point, cap=args.cap
    )
    emit(report, args.format, types_text(report))
    return EXIT_OK


def cmd_twist(args) -> int:
    label, rank = parse_group(args.group, args.rank)
    if args.action != "trivial":
        raise UsageError("twist is only defined for trivial (split) actions")
    datum = build_root_datum(label, rank)
    point = parse_point(args.point, rank) if args.point else tuple(
        Fraction(1, args.order) for _ in range(rank)
    )
    base = point_from_root_values(datum, point)
    base, _ = reduce_to_alcove(datum, base)
    action = trivial_action(rank, args.order)
    classes = h1_elements(datum, action, cap=args.cap)
    types = local_types(datum, action, base=base, cap=args.cap)

    def twist_row(rep: QZVector) -> dict:
        reduced, facet = type_to_alcove(datum, rep, args.order, base)
        return {
            "representative": vec_str(rep),
            "point_root_values": vec_str(simple_root_values(datum, reduced)),
            "point_coroot_coordinates": vec_str(reduced),
            "facet": {
                "vanishing_walls": sorted(facet.vanishing_walls),
                "classification": facet.classification,
                "special": facet.special,
            },
            "facet_text": facet.describe(),
        }

    if args.class_index is not None:
        if not 0 <= args.class_index < len(classes.representatives):
            raise UsageError(
                f"--class must be in 0..{len(classes.representatives) - 1}"
            )
        rep = classes.representatives[args.class_index]
        rows = [dict(twist_row(rep), class_index=args.class_index)]
    else:
        rows = [dict(twist_row(t.orbit_representative), type_index=t.index)
                for t in types]

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "twist",
        "group": {"label": label, "rank": rank},
        "order": args.order,
        "base_point": {"root_values": vec_str(point)},
        "twists": rows,
        "type_count": len(types),
    }
    lines = [
        f"group: {label}{rank}",
        f"order: {args.order}",
        f"base point (root values): [{', '.join(vec_str(point))}]",
    ]
    for row in rows:
        tag = (f"class {row['class_index']}" if "class_index" in row
               else f"type {row['type_index']}")
        lines.append(
            f"{tag}: point [" + ", ".join(row["point_root_values"]) + "], "
            f"facet: {row['facet_text']}"
        )
    emit(report, args.format, lines)
    return EXIT_OK


def cmd_split_degree(args) -> int:
    label, rank = parse_group(args.group, args.rank)
    datum = build_root_datum(label, rank)
    if not args.point:
        raise UsageError("--point is required for split-degree")
    point = parse_point(args.point, rank)
    x = point_from_root_values(datum, point)
    degree, tame = min_split_degree(datum, x, args.char or 0)
    data = vertex_prime_data(label, rank)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "split-degree",
        "group": {"label": label, "rank": rank},
        "point_root_values": vec_str(point),
        "degree": degree,
        "characteristic": args.char or 0,
        "tame": tame,
        "mark_primes": sorted(data.mark_primes),
        "excluded_characteristics": sorted(data.excluded_characteristics),
    }
    lines = [
        f"group: {label}{rank}",
        f"point (root values): [{', '.join(vec_str(point))}]",
        f"degree: {degree}",
        f"tame: {'yes' if tame else 'no (wild)'}"
        + (f" (char {args.char})" if args.char else " (no excluded characteristic)"),
        f"mark primes: {sorted(data.mark_primes)}",
        f"excluded characteristics: {sorted(data.excluded_characteristics)}",
    ]
    emit(report, args.format, lines)
    return EXIT_OK


def cmd_orbit(args) -> int:
    label, rank = parse_group(args.group, args.rank)
    datum = build_root_datum(label, rank)
    point = parse_point(args.point, rank) if args.point else tuple(
        Fraction(1, args.order) for _ in range(rank)
    )
    a = point_from_root_values(datum, point)
    reps = apartment_orbit_types(datum, a, args.order, cap=args.cap)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "orbit",
        "group": {"label": label, "rank": rank},
        "order": args.order,
        "point_root_values": vec_str(point),
        "representatives": [vec_str(simple_root_values(datum, r)) for r in reps],
        "count": len(reps),
    }
    lines = [
        f"group: {label}{rank}",
        f"order: {args.order}",
        f"point (root values): [{', '.join(vec_str(point))}]",
    ]
    for r in reps:
        lines.append("rep (root values): [" + ", ".join(vec_str(simple_root_values(datum, r))) + "]")
    lines.append(f"count: {len(reps)}")
    emit(report, args.format, lines)
    return EXIT_OK


def cmd_data(args) -> int:
    label, rank = parse_group(args.group, args.rank)
    data = vertex_prime_data(label, rank)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "data",
        "group": {"label": label, "rank": rank},
        "mark_primes": sorted(data.mark_primes),
        "affine_aut_order": data.affine_aut_order,
        "twisted_affine_aut_order": data.twisted_affine_aut_order,
        "excluded_characteristics": sorted(data.excluded_characteristics),
    }
    lines = [
        f"group: {label}{rank}",
        f"mark primes: {sorted(data.mark_primes)}",
        f"affine diagram automorphisms: "
        + (str(data.affine_aut_order) if data.affine_aut_order else "not quoted"),
        f"twisted affine diagram automorphisms: "
        + (str(data.twisted_affine_aut_order)
           if data.twisted_affine_aut_order else "not quoted"),
        f"excluded characteristics: {sorted(data.excluded_characteristics)}",
    ]
    emit(report, args.format, lines)
    return EXIT_OK


def _branch_point_types(bp: dict, cap: int) -> dict:
    try:
        group = bp["group"]
        label = str(group["label"]).upper()
        rank = int(group["rank"])
        order = int(bp["order"])
        action = bp.get("action", {"kind": "trivial"})
        kind = action.get("kind", "trivial")
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed branch point {bp!r}") from exc
    perm = None
    point = None
    if kind == "sl-involution":
        variant = action.get("variant", "J")
        if variant not in ("J", "J-prime"):
            raise UsageError(f"unknown sl-involution variant {variant!r}")
        kind = "sl-J" if variant == "J" else "sl-Jprime"
    elif kind == "diagram":
        perm_in = action.get("permutation")
        if not isinstance(perm_in, list):
            raise UsageError("diagram action needs a permutation list")
        perm = tuple(int(p) - 1 for p in perm_in)
    elif kind != "trivial":
        raise UsageError(f"unknown action kind {kind!r}")
    if "point" in bp:
        point = tuple(parse_fraction(str(x)) for x in bp["point"])
        if len(point) != rank:
            raise UsageError("branch point 'point' has the wrong length")
    return compute_types(label, rank, order, kind, perm=perm, point=point, cap=cap)


def cmd_global(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(config, dict) or "branch_points" not in config:
        raise UsageError("config must be an object with a branch_points list")
    points = config["branch_points"]
    if not isinstance(points, list):
        raise UsageError("branch_points must be a list")

    per_point = []
    names = set()
    for i, bp in enumerate(points):
        name = str(bp.get("name", f"x{i}"))
        if name in names:
            raise UsageError(f"duplicate branch point name {name!r}")
        names.add(name)
        sub = _branch_point_types(bp, args.cap)
        per_point.append((name, sub))

    pi0 = 1
    for _, sub in per_point:
        pi0 *= sub["type_count"]

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "global",
        "branch_points": [
            {
                "name": name,
                "group": sub["group"],
                "order": sub["order"],
                "action": sub["action"],
                "type_count": sub["type_count"],
                "types": [t["representative"] for t in sub["types"]],
            }
            for name, sub in per_point
        ],
        "pi0": pi0,
    }
    lines = []
    for name, sub in per_point:
        g = sub["group"]
        lines.append(
            f"point {name}: {g['label']}{g['rank']} order {sub['order']} "
            f"({_action_text(sub['action'])}) -> types {sub['type_count']}"
        )
    lines.append(f"pi0: {pi0}")

    capped = pi0 > args.product_cap
    if not capped:
        tuples = [[]]
        for _, sub in per_point:
            tuples = [t + [i] for t in tuples for i in range(sub["type_count"])]
        report["tuples"] = [list(t) for t in tuples]
        for t in tuples:
            lines.append("tuple: (" + ", ".join(str(i) for i in t) + ")")
    else:
        report["tuples"] = None
        report["tuples_omitted"] = (
            f"product {pi0} exceeds the output cap {args.product_cap}"
        )
        lines.append(
            f"tuples omitted: product {pi0} exceeds the output cap "
            f"{args.product_cap}"
        )
    emit(report, args.format, lines)
    return EXIT_CAP if capped else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, with_group=True, with_order=False):
    if with_group:
        p.add_argument("--group", required=True,
                       help="Cartan label (A..G), optionally with the rank, e.g. A1")
        p.add_argument("--rank", type=int, help="rank when --group is a bare letter")
    if with_order:
        p.add_argument("--order", type=int, required=True,
                       help="order e of the cyclic group")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, default=None,
                   help="enumeration cap (default from PARAHORIC_CAP or 10^6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parahoric",
        description="Local types of equivariant torsors and twisted parahoric "
                    "group schemes, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("types", help="H1 classes and local type count")
    _add_common(p, with_order=True)
    p.add_argument("--action", default="trivial",
                   choices=("trivial", "diagram", "sl-J", "sl-Jprime"))
    p.add_argument("--perm", help="diagram permutation, 1-indexed, e.g. 3,2,1")
    p.add_argument("--point", help="base point as comma-separated root values")
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("twist", help="alcove point and facet of each twisted type")
    _add_common(p, with_order=True)
    p.add_argument("--action", default="trivial",
                   choices=("trivial", "diagram", "sl-J", "sl-Jprime"))
    p.add_argument("--point", help="base point as comma-separated root values")
    p.add_argument("--class", dest="class_index", type=int, default=None,
                   help="index of a single H1 class to twist by")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("split-degree", help="minimal splitting degree of a point")
    _add_common(p)
    p.add_argument("--point", required=True,
                   help="point as comma-separated root values")
    p.add_argument("--char", type=int, default=0,
                   help="residue characteristic to test tameness against")
    p.set_defaults(func=cmd_split_degree)

    p = sub.add_parser("orbit", help="apartment orbit representatives at level e")
    _add_common(p, with_order=True)
    p.add_argument("--point", help="point as comma-separated root values")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("data", help="mark primes and excluded characteristics")
    _add_common(p)
    p.set_defaults(func=cmd_data)

    p = sub.add_parser("global", help="product of local type sets over a config")
    _add_common(p, with_group=False)
    p.add_argument("--config", required=True, help="JSON config file")
    p.set_defaults(func=cmd_global)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_cap = os.environ.get("PARAHORIC_CAP")
    if args.cap is None:
        try:
            args.cap = int(env_cap) if env_cap else DEFAULT_CAP
        except ValueError:
            print(f"PARAHORIC_CAP is not an integer: {env_cap!r}", file=sys.stderr)
            return EXIT_USAGE
    args.product_cap = min(args.cap, DEFAULT_PRODUCT_CAP)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:  # UsageError and library validation errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
