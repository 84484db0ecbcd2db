"""Sector geometry of a linear quotient [V/G] in representation-ring terms.

Since V is linear, equivariant K-theory of every fixed subspace contracts
onto the representation ring of the acting centralizer, so the whole
geometry is carried by characters: one sector per conjugacy class holding
the invariants of its representative, and one pair sector per orbit of
pairs (g, h) multiplying to a given target.  Pair sectors carry the three
bundles that drive the product:

* ``excess``       V + V^{g,h} - V^g - V^h   (failure of transversality),
* ``pants_excess`` V + V^{g,h}               (the three-holed variant),
* ``normal``       V^{gh} - V^{g,h}          (normal directions of the
  embedding of the pair locus into the target fixed locus).

All three must be honest characters; a violation raises ContractViolation
because it cannot happen mathematically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import (
    ClassFunction,
    character_table,
    class_function,
    fixed_subspace_character,
    integer_decompose,
    is_honest,
    lambda_minus_one_dual,
    regular_character,
    trivial_character,
    zero_character,
)
from .errors import ContractViolation
from .groups import FiniteGroup, Subgroup, pair_orbits

__all__ = [
    "GroupRep",
    "Sector",
    "PairSector",
    "InertiaClass",
    "GlobalQuotient",
    "excess_euler_class",
    "pants_euler_class",
]


@dataclass(frozen=True)
class GroupRep:
    """A finite-dimensional representation of G, described by its character."""

    group: FiniteGroup
    character: ClassFunction

    def __post_init__(self):
        if self.character.domain is not self.group.full():
            raise ValueError("the character must live on the full group")
        if not is_honest(self.character):
            raise ValueError("the character has a negative or fractional multiplicity")

    @property
    def dim(self) -> int:
        return self.character.degree()

    @staticmethod
    def zero(group: FiniteGroup) -> "GroupRep":
        return GroupRep(group, zero_character(group.full()))

    @staticmethod
    def trivial(group: FiniteGroup) -> "GroupRep":
        return GroupRep(group, trivial_character(group.full()))

    @staticmethod
    def regular(group: FiniteGroup) -> "GroupRep":
        return GroupRep(group, regular_character(group.full()))

    @staticmethod
    def irreducible(group: FiniteGroup, index: int) -> "GroupRep":
        table = character_table(group.full())
        return GroupRep(group, table.irreducibles[index])

    @staticmethod
    def from_values(group: FiniteGroup, values) -> "GroupRep":
        return GroupRep(group, class_function(group.full(), values))


@dataclass(frozen=True)
class Sector:
    """One conjugacy class [g] with the invariants of g as a centralizer rep."""

    rep: int
    centralizer: Subgroup
    fixed_char: ClassFunction

    @property
    def fixed_dim(self) -> int:
        return self.fixed_char.degree()


@dataclass(frozen=True)
class PairSector:
    """One orbit of pairs (g, h) with g*h = target, and its bundle classes."""

    target: int
    g: int
    h: int
    stabilizer: Subgroup
    orbit_size: int
    fixed_pair: ClassFunction
    excess: ClassFunction
    pants_excess: ClassFunction
    normal: ClassFunction


def excess_euler_class(pair: PairSector) -> ClassFunction:
    """Alternating exterior sum of the dual excess class; the product twist."""
    return lambda_minus_one_dual(pair.excess)


def pants_euler_class(pair: PairSector) -> ClassFunction:
    """Alternating exterior sum of the dual three-holed excess class."""
    return lambda_minus_one_dual(pair.pants_excess)


@dataclass(frozen=True)
class InertiaClass:
    """A K-theory class on the inertia of [V/G]: one virtual character per sector."""

    quotient: "GlobalQuotient"
    components: tuple[ClassFunction, ...]

    def __post_init__(self):
        sectors = self.quotient.sectors()
        if len(self.components) != len(sectors):
            raise ValueError("one component per sector is required")
        for comp, sector in zip(self.components, sectors):
            if comp.domain is not sector.centralizer:
                raise ValueError("component domains must match the sector centralizers")

    def _check_quotient(self, other: "InertiaClass") -> None:
        if self.quotient is not other.quotient:
            raise ValueError("classes live on different quotients")

    def __add__(self, other: "InertiaClass") -> "InertiaClass":
        self._check_quotient(other)
        comps = tuple(a + b for a, b in zip(self.components, other.components))
        return InertiaClass(self.quotient, comps)

    def __sub__(self, other: "InertiaClass") -> "InertiaClass":
        self._check_quotient(other)
        comps = tuple(a - b for a, b in zip(self.components, other.components))
        return InertiaClass(self.quotient, comps)

    def __neg__(self) -> "InertiaClass":
        return InertiaClass(self.quotient, tuple(-c for c in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


class GlobalQuotient:
    """The quotient [V/G] with a fixed choice of conjugacy bookkeeping.

    The optional seed reshuffles class representatives, transporters and
    pair representatives; all derived ring structure must be independent of
    it up to relabeling, which the test suite checks.
    """

    def __init__(self, group: FiniteGroup, rep: GroupRep, seed: int | None = None):
        if rep.group is not group:
            raise ValueError("representation does not belong to the group")
        self.group = group
        self.rep = rep
        self.seed = seed
        self.conj = group.conjugacy(seed)
        self._sectors: tuple[Sector, ...] | None = None
        self._pair_sectors: dict[int, tuple[PairSector, ...]] = {}
        self._euler: dict[tuple[int, int, int], ClassFunction] = {}
        self._koszul: dict[tuple[int, int, int], ClassFunction] = {}
        self._basis: tuple[tuple[int, int], ...] | None = None

    # -- sectors -----------------------------------------------------------

    def sectors(self) -> tuple[Sector, ...]:
        if self._sectors is None:
            chi = self.rep.character
            built = []
            for idx, rep in enumerate(self.conj.reps):
                cent = self.group.subgroup(self.conj.centralizers[idx])
                fixed = fixed_subspace_character(chi, (rep,), cent)
                built.append(Sector(rep=rep, centralizer=cent, fixed_char=fixed))
            self._sectors = tuple(built)
        return self._sectors

    def centralizer(self, class_index: int) -> Subgroup:
        return self.sectors()[class_index].centralizer

    def pair_sectors(self, target: int) -> tuple[PairSector, ...]:
        if target not in self._pair_sectors:
            chi = self.rep.character
            built = []
            for orbit in pair_orbits(self.group, target, conj=self.conj, seed=self.seed):
                stab = self.group.subgroup(orbit.stabilizer)
                ambient_char = fixed_subspace_character(chi, (), stab)
                fixed_pair = fixed_subspace_character(chi, (orbit.g, orbit.h), stab)
                fixed_g = fixed_subspace_character(chi, (orbit.g,), stab)
                fixed_h = fixed_subspace_character(chi, (orbit.h,), stab)
                fixed_target = fixed_subspace_character(chi, (target,), stab)
                excess = ambient_char + fixed_pair - fixed_g - fixed_h
                pants = ambient_char + fixed_pair
                normal = fixed_target - fixed_pair
                for name, cls in (("excess", excess), ("pants", pants), ("normal", normal)):
                    if not is_honest(cls):
                        raise ContractViolation(
                            f"{name} class of pair ({orbit.g},{orbit.h}) at target "
                            f"{target} is not an honest character"
                        )
                built.append(
                    PairSector(
                        target=target,
                        g=orbit.g,
                        h=orbit.h,
                        stabilizer=stab,
                        orbit_size=orbit.orbit_size,
                        fixed_pair=fixed_pair,
                        excess=excess,
                        pants_excess=pants,
                        normal=normal,
                    )
                )
            self._pair_sectors[target] = tuple(built)
        return self._pair_sectors[target]

    def all_pair_sectors(self) -> list[PairSector]:
        return [ps for rep in self.conj.reps for ps in self.pair_sectors(rep)]

    # -- cached product twists ----------------------------------------------

    def product_twist(self, pair: PairSector) -> ClassFunction:
        key = (pair.target, pair.g, pair.h)
        if key not in self._euler:
            self._euler[key] = excess_euler_class(pair)
        return self._euler[key]

    def pushforward_twist(self, pair: PairSector) -> ClassFunction:
        """Euler class of the dual normal directions, picked up by pushforward."""
        key = (pair.target, pair.g, pair.h)
        if key not in self._koszul:
            self._koszul[key] = lambda_minus_one_dual(pair.normal)
        return self._koszul[key]

    # -- distinguished classes and the basis ---------------------------------

    def zero_class(self) -> InertiaClass:
        comps = tuple(zero_character(s.centralizer) for s in self.sectors())
        return InertiaClass(self, comps)

    def unit_class(self) -> InertiaClass:
        comps = [zero_character(s.centralizer) for s in self.sectors()]
        comps[0] = trivial_character(self.sectors()[0].centralizer)
        return InertiaClass(self, tuple(comps))

    def basis(self) -> tuple[tuple[int, int], ...]:
        """Flat basis (class representative, irreducible index), in canonical order."""
        if self._basis is None:
            flat = []
            for idx, sector in enumerate(self.sectors()):
                table = character_table(sector.centralizer)
                for t in range(len(table.irreducibles)):
                    flat.append((self.conj.reps[idx], t))
            self._basis = tuple(flat)
        return self._basis

    def basis_class(self, index: int) -> InertiaClass:
        rep, t = self.basis()[index]
        class_index = self.conj.class_of[rep]
        comps = [zero_character(s.centralizer) for s in self.sectors()]
        table = character_table(self.sectors()[class_index].centralizer)
        comps[class_index] = table.irreducibles[t]
        return InertiaClass(self, tuple(comps))

    def component_multiplicities(self, value: InertiaClass) -> tuple[int, ...]:
        """Integer coordinates of an inertia class in the flat basis."""
        out: list[int] = []
        for comp in value.components:
            out.extend(integer_decompose(comp))
        return tuple(out)

    def __repr__(self):
        seed = "" if self.seed is None else f", seed={self.seed}"
        return f"GlobalQuotient({self.group.name}, dim={self.rep.dim}{seed})"
