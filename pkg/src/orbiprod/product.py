"""The inertial product engine and its multiplication tables.

The product of two inertia classes is assembled target class by target
class: every orbit of pairs (g, h) with g*h = target contributes the
induction, from its stabilizer up to the centralizer of the target, of

    x|_g  *  y|_h  *  twist(pair)  *  pushforward_twist(pair)

where ``x|_g`` transports the component of x at the class of g to g itself
and restricts to the stabilizer.  The caller chooses the twist; the virtual
product uses the Euler class of the dual excess bundle.  The pushforward
twist (Euler class of the dual normal directions) belongs to the engine,
not to the twist: identifying equivariant K-theory of a linear subspace
with the representation ring turns the pushforward along a linear embedding
into multiplication by that factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Mapping

from .characters import (
    character_table,
    induce,
    restrict_transport,
    trivial_character,
    zero_character,
)
from .errors import ContractViolation
from .inertia import GlobalQuotient, InertiaClass, PairSector

__all__ = [
    "ProductTable",
    "RingReport",
    "inertial_product",
    "virtual_product",
    "product_table",
    "involution",
    "ring_property_check",
    "relabel_to_canonical",
]

TwistChoice = "Callable[[PairSector], object] | Mapping"


@dataclass(frozen=True)
class ProductTable:
    """Integer structure constants over the basis (class rep, irreducible)."""

    basis: tuple[tuple[int, int], ...]
    constants: tuple[tuple[int, int, int, int], ...]

    def lookup(self) -> dict[tuple[int, int, int], int]:
        return {(i, j, k): n for i, j, k, n in self.constants}

    def rows(self) -> list[list[dict[int, int]]]:
        size = len(self.basis)
        out: list[list[dict[int, int]]] = [[{} for _ in range(size)] for _ in range(size)]
        for i, j, k, n in self.constants:
            out[i][j][k] = n
        return out

    def to_json_dict(self) -> dict:
        return {
            "basis": [list(b) for b in self.basis],
            "constants": [list(c) for c in self.constants],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def render_text(self) -> str:
        names = {i: f"([{rep}],{t})" for i, (rep, t) in enumerate(self.basis)}
        lines = [f"basis of size {len(self.basis)}: " + " ".join(names[i] for i in names)]
        rows = self.rows()
        for i in range(len(self.basis)):
            for j in range(len(self.basis)):
                terms = " + ".join(
                    (f"{n}*" if n != 1 else "") + names[k]
                    for k, n in sorted(rows[i][j].items())
                    if n
                )
                lines.append(f"{names[i]} * {names[j]} = {terms if terms else '0'}")
        return "\n".join(lines) + "\n"


def _normalize_twist(twist) -> Callable[[PairSector], object]:
    if callable(twist):
        return twist
    if isinstance(twist, Mapping):
        def from_mapping(pair: PairSector):
            key = (pair.target, pair.g, pair.h)
            if key not in twist:
                raise ValueError(f"twist is missing the pair sector {key}")
            return twist[key]
        return from_mapping
    raise TypeError("twist must be callable on pair sectors or a mapping")


def inertial_product(x: InertiaClass, y: InertiaClass, twist) -> InertiaClass:
    """Product with a caller-supplied twist class per pair sector."""
    model = x.quotient
    x._check_quotient(y)
    twist_of = _normalize_twist(twist)
    conj = model.conj
    components = []
    for idx, target in enumerate(conj.reps):
        target_cent = model.centralizer(idx)
        acc = zero_character(target_cent)
        for pair in model.pair_sectors(target):
            xg = x.components[conj.class_of[pair.g]]
            yh = y.components[conj.class_of[pair.h]]
            if xg.is_zero() or yh.is_zero():
                continue
            stab = pair.stabilizer
            left = restrict_transport(xg, conj.transporters[pair.g], stab)
            right = restrict_transport(yh, conj.transporters[pair.h], stab)
            factor = twist_of(pair)
            term = left * right * factor * model.pushforward_twist(pair)
            if term.is_zero():
                continue
            acc = acc + induce(term, target_cent)
        components.append(acc)
    return InertiaClass(model, tuple(components))


def virtual_product(x: InertiaClass, y: InertiaClass) -> InertiaClass:
    """The product twisted by the Euler class of the dual excess bundle."""
    return inertial_product(x, y, x.quotient.product_twist)


def involution(x: InertiaClass) -> InertiaClass:
    """Relabel components along g -> g^{-1}, transporting to the chosen reps."""
    model = x.quotient
    group = model.group
    conj = model.conj
    components = []
    for idx, rep in enumerate(conj.reps):
        source = group.inv(rep)
        src_class = conj.class_of[source]
        comp = x.components[src_class]
        moved = restrict_transport(comp, conj.transporters[source], model.centralizer(idx))
        components.append(moved)
    return InertiaClass(model, tuple(components))


def product_table(model: GlobalQuotient) -> ProductTable:
    """All structure constants of the virtual product on the flat basis."""
    basis = model.basis()
    size = len(basis)
    constants = []
    for i in range(size):
        bi = model.basis_class(i)
        for j in range(size):
            bj = model.basis_class(j)
            coords = model.component_multiplicities(virtual_product(bi, bj))
            for k, n in enumerate(coords):
                if n:
                    constants.append((i, j, k, n))
    return ProductTable(basis=basis, constants=tuple(constants))


@dataclass(frozen=True)
class RingReport:
    """Outcome of the unit/commutativity/associativity audit of a table."""

    basis_size: int
    unit_ok: bool
    commutative_ok: bool
    associative_ok: bool
    failure: str | None

    @property
    def passed(self) -> bool:
        return self.unit_ok and self.commutative_ok and self.associative_ok

    def to_json_dict(self) -> dict:
        return {
            "basis_size": self.basis_size,
            "unit": self.unit_ok,
            "commutative": self.commutative_ok,
            "associative": self.associative_ok,
            "failure": self.failure,
        }


def _unit_index(model: GlobalQuotient) -> int:
    # The identity class is the first basis block, so no offset is needed.
    return character_table(model.centralizer(0)).trivial_index


def ring_property_check(model: GlobalQuotient, table: ProductTable | None = None) -> RingReport:
    """Verify unit, commutativity and associativity of the virtual table."""
    if table is None:
        table = product_table(model)
    size = len(table.basis)
    rows = table.rows()
    failure = None

    unit = _unit_index(model)
    unit_ok = True
    for j in range(size):
        if rows[unit][j] != {j: 1} or rows[j][unit] != {j: 1}:
            unit_ok = False
            if failure is None:
                failure = f"unit law fails against basis element {j}"
            break

    commutative_ok = True
    for i in range(size):
        for j in range(i + 1, size):
            if rows[i][j] != rows[j][i]:
                commutative_ok = False
                if failure is None:
                    failure = f"commutativity fails at ({i},{j})"
                break
        if not commutative_ok:
            break

    associative_ok = True
    for i in range(size):
        for j in range(size):
            row_ij = rows[i][j]
            for k in range(size):
                lhs: dict[int, int] = {}
                for m, n in row_ij.items():
                    for l, n2 in rows[m][k].items():
                        lhs[l] = lhs.get(l, 0) + n * n2
                rhs: dict[int, int] = {}
                for m, n in rows[j][k].items():
                    for l, n2 in rows[i][m].items():
                        rhs[l] = rhs.get(l, 0) + n * n2
                if {l: n for l, n in lhs.items() if n} != {l: n for l, n in rhs.items() if n}:
                    associative_ok = False
                    if failure is None:
                        failure = f"associativity fails at ({i},{j},{k})"
                    break
            if not associative_ok:
                break
        if not associative_ok:
            break

    return RingReport(
        basis_size=size,
        unit_ok=unit_ok,
        commutative_ok=commutative_ok,
        associative_ok=associative_ok,
        failure=failure,
    )


def relabel_to_canonical(model: GlobalQuotient, table: ProductTable) -> ProductTable:
    """Re-express a (possibly seeded) table over the canonical basis labels.

    Seeded class representatives are matched to canonical ones through the
    canonical transporters, and each irreducible is matched to its transport;
    the constants are then permuted accordingly.  For an unseeded model this
    is the identity.
    """
    if model.seed is None:
        return table
    group = model.group
    canonical = group.conjugacy(None)
    offsets_seeded = []
    offsets_canonical = []
    total = 0
    total_c = 0
    canonical_tables = []
    for idx in range(len(model.conj.reps)):
        offsets_seeded.append(total)
        total += len(character_table(model.centralizer(idx)).irreducibles)
        cent_c = group.subgroup(canonical.centralizers[idx])
        canonical_tables.append(character_table(cent_c))
        offsets_canonical.append(total_c)
        total_c += len(canonical_tables[idx].irreducibles)
    if total != total_c:
        raise ContractViolation("seeded and canonical bases have different sizes")

    perm = [0] * total
    for idx, seeded_rep in enumerate(model.conj.reps):
        cent_c = canonical_tables[idx].domain
        # canonical transporter sends the canonical rep to the seeded one
        t = canonical.transporters[seeded_rep]
        t_inv = group.inv(t)
        seeded_table = character_table(model.centralizer(idx))
        for s, chi in enumerate(seeded_table.irreducibles):
            moved = restrict_transport(chi, t_inv, cent_c)
            perm[offsets_seeded[idx] + s] = offsets_canonical[idx] + canonical_tables[
                idx
            ].index_of(moved)

    basis = []
    for idx in range(len(canonical.reps)):
        for s in range(len(canonical_tables[idx].irreducibles)):
            basis.append((canonical.reps[idx], s))
    constants = sorted(
        (perm[i], perm[j], perm[k], n) for i, j, k, n in table.constants
    )
    return ProductTable(basis=tuple(basis), constants=tuple(constants))
