"""Batch front door: parse inputs, dispatch computations, emit JSON reports.

Exit statuses: 0 success, 1 comparison mismatch, 2 malformed input,
3 violated mathematical contract.  Identical jobs produce byte-identical
output; everything is JSON with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .characters import character_table, molien_check
from .cyclotomic import Cyclotomic, parse_value
from .errors import ContractViolation
from .groups import FiniteGroup, build_group, cyclic_group, dihedral_group, quaternion_group, symmetric_group
from .drinfeld import fusion_constants
from .inertia import GlobalQuotient, GroupRep, excess_euler_class
from .product import ProductTable, product_table, ring_property_check

__all__ = ["JobSpec", "run", "main"]

COMMANDS = ("chartab", "sectors", "product-table", "check", "drinfeld", "compare")

_BUILTIN_RE = re.compile(r"^(cyclic|dihedral|symmetric)(\d+)$")


@dataclass(frozen=True)
class JobSpec:
    """One batch job: group source, representation, command, options."""

    command: str
    group_file: str | None = None
    builtin: str | None = None
    reps: tuple[str, ...] = field(default_factory=tuple)
    out: str | None = None
    degree: int = 10
    seed: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if (self.group_file is None) == (self.builtin is None):
            raise ValueError("exactly one of a group file or a builtin name is required")


def _resolve_builtin(name: str) -> FiniteGroup:
    if name == "quaternion8":
        return quaternion_group()
    if name == "trivial":
        return cyclic_group(1)
    match = _BUILTIN_RE.match(name)
    if not match:
        raise ValueError(f"unknown builtin group {name!r}")
    family, n = match.group(1), int(match.group(2))
    if family == "cyclic":
        return cyclic_group(n)
    if family == "dihedral":
        return dihedral_group(n)
    if n > 5:
        raise ValueError("builtin symmetric groups go up to symmetric5")
    return symmetric_group(n)


def _load_group(job: JobSpec) -> FiniteGroup:
    if job.builtin is not None:
        return _resolve_builtin(job.builtin)
    text = Path(job.group_file).read_text(encoding="utf-8")
    return build_group(json.loads(text))


def _resolve_rep(group: FiniteGroup, spec: str) -> GroupRep:
    spec = spec.strip()
    if spec == "zero":
        return GroupRep.zero(group)
    if spec == "trivial":
        return GroupRep.trivial(group)
    if spec == "regular":
        return GroupRep.regular(group)
    if spec.startswith("irrep:"):
        index = int(spec.split(":", 1)[1])
        table = character_table(group.full())
        if not 0 <= index < len(table.irreducibles):
            raise ValueError(f"irreducible index {index} out of range")
        return GroupRep.irreducible(group, index)
    if spec == "sign":
        return _sign_rep(group)
    if spec == "standard":
        return _standard_rep(group)
    values = [parse_value(part) for part in spec.split(",")]
    try:
        return GroupRep.from_values(group, values)
    except ValueError as exc:
        raise ValueError(f"representation {spec!r} is not an honest character: {exc}") from exc


def _sign_rep(group: FiniteGroup) -> GroupRep:
    name = group.name
    if name.startswith("symmetric"):
        # parity of the permutation underlying each class representative
        table = character_table(group.full())
        for i, chi in enumerate(table.irreducibles):
            values = {str(v) for v in chi.values}
            if chi.degree() == 1 and values == {"1", "-1"}:
                return GroupRep.irreducible(group, i)
        return GroupRep.trivial(group)  # symmetric1 and symmetric2 degenerate cases
    if name.startswith("cyclic") and group.order % 2 == 0:
        table = character_table(group.full())
        for i, chi in enumerate(table.irreducibles):
            if chi.degree() == 1 and all(v.is_rational() for v in chi.values) and any(
                str(v) == "-1" for v in chi.values
            ):
                return GroupRep.irreducible(group, i)
    raise ValueError(f"no designated sign representation for group {name!r}")


def _standard_rep(group: FiniteGroup) -> GroupRep:
    # natural permutation character minus the trivial one, classwise
    if group.permutations is None:
        if group.order == 1:
            return GroupRep.zero(group)
        raise ValueError("the standard representation needs a permutation realization")
    full = group.full()
    values = []
    for rep in full.class_reps:
        image = group.permutations[rep]
        values.append(sum(1 for i, moved in enumerate(image) if moved == i) - 1)
    return GroupRep.from_values(group, values)


def _character_payload(chi) -> list[str]:
    return [str(v) for v in chi.values]


def _chartab_payload(group: FiniteGroup) -> dict:
    table = character_table(group.full())
    return {
        "group": {"name": group.name, "order": group.order},
        "classes": [
            {"rep": rep, "size": size, "element_order": order}
            for rep, size, order in zip(
                table.domain.class_reps, table.class_sizes, table.element_orders
            )
        ],
        "irreducibles": [_character_payload(chi) for chi in table.irreducibles],
    }


def _sectors_payload(model: GlobalQuotient, degree: int) -> dict:
    sectors = []
    for idx, sector in enumerate(model.sectors()):
        sectors.append(
            {
                "class_rep": sector.rep,
                "class_size": len(model.conj.classes[idx]),
                "centralizer_order": sector.centralizer.order,
                "fixed_dim": sector.fixed_dim,
                "fixed_char": _character_payload(sector.fixed_char),
            }
        )
    pair_payload = {}
    for target in model.conj.reps:
        entries = []
        for pair in model.pair_sectors(target):
            entries.append(
                {
                    "g": pair.g,
                    "h": pair.h,
                    "orbit_size": pair.orbit_size,
                    "stabilizer_order": pair.stabilizer.order,
                    "stabilizer_class_reps": list(pair.stabilizer.class_reps),
                    "excess": _character_payload(pair.excess),
                    "pants_excess": _character_payload(pair.pants_excess),
                    "normal": _character_payload(pair.normal),
                    "euler_class": _character_payload(model.product_twist(pair)),
                }
            )
        pair_payload[str(target)] = entries
    return {
        "group": {"name": model.group.name, "order": model.group.order},
        "rep_dim": model.rep.dim,
        "sectors": sectors,
        "pair_sectors": pair_payload,
    }


def _check_payload(model: GlobalQuotient, degree: int) -> tuple[dict, bool]:
    report = ring_property_check(model)
    pair_count = len(model.all_pair_sectors())  # construction asserts honesty
    molien_ok = True
    checked = 0
    for idx, rep in enumerate(model.conj.reps):
        ok = molien_check(model.rep.character, rep, model.centralizer(idx), degree)
        molien_ok = molien_ok and ok
        checked += 1
    payload = {
        "ring": report.to_json_dict(),
        "honesty": {"pair_sectors_checked": pair_count, "ok": True},
        "molien": {"sectors_checked": checked, "degree": degree, "ok": molien_ok},
    }
    return payload, report.passed and molien_ok


def _compare_payload(group: FiniteGroup, seed: int | None) -> tuple[dict, int]:
    model = GlobalQuotient(group, GroupRep.zero(group), seed=seed)
    virtual = product_table(model)
    fusion = fusion_constants(group, seed=seed)
    lv, lf = virtual.lookup(), fusion.lookup()
    mismatches = sorted(
        {key for key in set(lv) | set(lf) if lv.get(key, 0) != lf.get(key, 0)}
    )
    size = len(virtual.basis)
    payload = {
        "group": {"name": group.name, "order": group.order},
        "basis_size": size,
        "constants_total": size ** 3,
        "mismatches": [list(k) for k in mismatches],
        "basis_match": virtual.basis == fusion.basis,
        "identical": not mismatches and virtual.basis == fusion.basis,
        "summary": (
            f"{size} basis elements, {size ** 3} constants, {len(mismatches)} mismatches"
        ),
    }
    return payload, 0 if payload["identical"] else 1


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit status, output text)."""
    group = _load_group(job)

    def model_for_reps() -> GlobalQuotient:
        reps = job.reps or ("zero",)
        total: GroupRep | None = None
        for spec in reps:
            rep = _resolve_rep(group, spec)
            total = rep if total is None else GroupRep(
                group, total.character + rep.character
            )
        return GlobalQuotient(group, total, seed=job.seed)

    if job.command == "chartab":
        payload, status = _chartab_payload(group), 0
    elif job.command == "sectors":
        payload, status = _sectors_payload(model_for_reps(), job.degree), 0
    elif job.command == "product-table":
        payload, status = product_table(model_for_reps()).to_json_dict(), 0
        payload["group"] = {"name": group.name, "order": group.order}
    elif job.command == "drinfeld":
        payload = fusion_constants(group, seed=job.seed).to_json_dict()
        payload["group"] = {"name": group.name, "order": group.order}
        status = 0
    elif job.command == "check":
        payload, passed = _check_payload(model_for_reps(), job.degree)
        status = 0 if passed else 3
    elif job.command == "compare":
        if any(spec != "zero" for spec in job.reps):
            raise ValueError("compare runs at the zero representation; drop --rep")
        payload, status = _compare_payload(group, job.seed)
    else:  # pragma: no cover - guarded by JobSpec
        raise ValueError(f"unknown command {job.command!r}")

    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return status, text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbiprod",
        description=(
            "Exact products on the K-theory of inertia of [V/G] and fusion "
            "rings of quantum doubles, with cross-checks."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--group", metavar="FILE", help="JSON group description")
    source.add_argument("--builtin", metavar="NAME", help="cyclicN | dihedralN | symmetricN (N<=5) | quaternion8 | trivial")
    parser.add_argument("--cmd", required=True, choices=COMMANDS, help="what to compute")
    parser.add_argument(
        "--rep",
        action="append",
        default=[],
        metavar="SPEC",
        help="zero | trivial | regular | sign | standard | irrep:K | comma-separated class values; repeatable, summed",
    )
    parser.add_argument("--out", metavar="PATH", help="write the JSON payload here instead of stdout")
    parser.add_argument("--degree", type=int, default=10, help="truncation degree for graded checks")
    parser.add_argument("--seed", type=int, default=None, help="reshuffle representative choices")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        job = JobSpec(
            command=args.cmd,
            group_file=args.group,
            builtin=args.builtin,
            reps=tuple(args.rep),
            out=args.out,
            degree=args.degree,
            seed=args.seed,
        )
        status, text = run(job)
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if job.out:
        Path(job.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
