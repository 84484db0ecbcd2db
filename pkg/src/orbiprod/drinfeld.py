"""Fusion ring of the quantum double of a finite group.

The double is modeled as conjugation-equivariant vector bundles on G: a
simple object is a conjugacy class [a] together with an irreducible of the
centralizer C(a), its character is a function on commuting pairs (b, x),
and the tensor product convolves the group coordinate.  Fusion constants
come from the orthonormal pair inner product.

This path deliberately shares no formulas with the induction-based product
engine (no induction, no transport-restriction, no exterior classes); only
the group/character-table plumbing and the table container are reused, so a
match between the two rings is a genuine two-sided check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import character_table
from .cyclotomic import Cyclotomic
from .errors import ContractViolation
from .groups import FiniteGroup
from .product import ProductTable

__all__ = [
    "DoubleSimple",
    "DoubleCharacter",
    "commuting_pairs",
    "double_simples",
    "double_character",
    "double_dimension",
    "fusion_constants",
]

_C0 = Cyclotomic(0)


@dataclass(frozen=True)
class DoubleSimple:
    """A simple object of the double: class representative plus irreducible index."""

    class_rep: int
    irr: int


@dataclass(frozen=True)
class DoubleCharacter:
    """Character on commuting pairs (b, x), aligned with ``commuting_pairs``."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]

    def value(self, index: int) -> Cyclotomic:
        return self.values[index]


def commuting_pairs(group: FiniteGroup) -> tuple[tuple[int, int], ...]:
    """All pairs (b, x) with b*x = x*b, in lexicographic order."""
    out = []
    for b in group.elements():
        for x in group.elements():
            if group.mul(b, x) == group.mul(x, b):
                out.append((b, x))
    return tuple(out)


def double_simples(group: FiniteGroup, seed: int | None = None) -> tuple[DoubleSimple, ...]:
    conj = group.conjugacy(seed)
    simples = []
    for idx, rep in enumerate(conj.reps):
        cent = group.subgroup(conj.centralizers[idx])
        for t in range(len(character_table(cent).irreducibles)):
            simples.append(DoubleSimple(class_rep=rep, irr=t))
    return tuple(simples)


def double_character(
    group: FiniteGroup, simple: DoubleSimple, seed: int | None = None
) -> DoubleCharacter:
    """Trace function of the equivariant bundle attached to a simple object.

    Zero off the class of the base point; at (b, x) with b conjugate to the
    base point, the value is the centralizer character evaluated at x pulled
    back through the transversal element carrying the base point to b.
    """
    conj = group.conjugacy(seed)
    class_index = conj.class_of[simple.class_rep]
    if conj.reps[class_index] != simple.class_rep:
        raise ValueError("simple object must be based at a chosen class representative")
    cent = group.subgroup(conj.centralizers[class_index])
    sigma = character_table(cent).irreducibles[simple.irr]
    values = []
    for b, x in commuting_pairs(group):
        if conj.class_of[b] != class_index:
            values.append(_C0)
            continue
        t = conj.transporters[b]
        values.append(sigma.value_at(group.conjugate(group.inv(t), x)))
    return DoubleCharacter(group=group, values=tuple(values))


def double_dimension(group: FiniteGroup, simple: DoubleSimple, seed: int | None = None) -> int:
    conj = group.conjugacy(seed)
    class_index = conj.class_of[simple.class_rep]
    cent = group.subgroup(conj.centralizers[class_index])
    sigma = character_table(cent).irreducibles[simple.irr]
    return len(conj.classes[class_index]) * sigma.degree()


def pair_inner_product(phi: DoubleCharacter, psi: DoubleCharacter) -> Cyclotomic:
    """(1/|G|) sum over commuting pairs of phi * conj(psi)."""
    group = phi.group
    acc = _C0
    for a, b in zip(phi.values, psi.values):
        if not (a.is_zero() or b.is_zero()):
            acc = acc + a * b.conjugate()
    return acc * Fraction(1, group.order)


def _convolve(group: FiniteGroup, index: dict, phi: DoubleCharacter, psi: DoubleCharacter):
    """Values of the tensor-product character on commuting pairs."""
    pairs = commuting_pairs(group)
    centralizer_of = {}
    for b, x in pairs:
        centralizer_of.setdefault(x, []).append(b)
    values = []
    for a, x in pairs:
        acc = _C0
        for b in centralizer_of[x]:
            c = group.mul(group.inv(b), a)
            ic = index.get((c, x))
            if ic is None:
                continue
            left = phi.values[index[(b, x)]]
            if left.is_zero():
                continue
            right = psi.values[ic]
            if right.is_zero():
                continue
            acc = acc + left * right
        values.append(acc)
    return DoubleCharacter(group=group, values=tuple(values))


def fusion_constants(group: FiniteGroup, seed: int | None = None) -> ProductTable:
    """Structure constants of the fusion ring on the simple objects."""
    simples = double_simples(group, seed)
    chars = [double_character(group, s, seed) for s in simples]
    pairs = commuting_pairs(group)
    index = {pair: i for i, pair in enumerate(pairs)}
    constants = []
    for i, phi in enumerate(chars):
        for j, psi in enumerate(chars):
            prod = _convolve(group, index, phi, psi)
            for k, chk in enumerate(chars):
                n = pair_inner_product(prod, chk).as_integer()
                if n is None or n < 0:
                    raise ContractViolation(
                        f"fusion constant at ({i},{j},{k}) is not a nonnegative integer"
                    )
                if n:
                    constants.append((i, j, k, n))
    basis = tuple((s.class_rep, s.irr) for s in simples)
    return ProductTable(basis=basis, constants=tuple(constants))
