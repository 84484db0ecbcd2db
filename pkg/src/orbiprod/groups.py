"""Finite groups as validated Cayley tables, with conjugacy bookkeeping.

Elements are labels ``0..order-1`` with the identity at label 0.  Everything
downstream (sectors, products, fusion) is an exhaustive sum over elements,
so groups are kept fully materialized; the hard cap keeps that honest.

Conjugacy data carries, besides the class partition, a chosen representative
per class and a transporter per element (an element conjugating the class
representative to it).  Representatives and transporters are deterministic;
an optional seed reshuffles the choices so that downstream results can be
checked for representative independence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "ConjugacyData",
    "PairOrbit",
    "GROUP_ORDER_CAP",
    "build_group",
    "group_from_generators",
    "group_from_cayley_table",
    "generated_subgroup",
    "pair_orbits",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "quaternion_group",
]

GROUP_ORDER_CAP = 4096
_ASSOC_EXHAUSTIVE_CAP = 256
_ASSOC_SAMPLES = 20000
_PERMUTATION_DEGREE_CAP = 32


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes of a group plus representative/transporter choices.

    classes are ordered by their minimal element and sorted internally, so
    the partition itself never depends on the seed; only the representative
    and transporter choices do.
    """

    classes: tuple[tuple[int, ...], ...]
    reps: tuple[int, ...]
    class_of: tuple[int, ...]
    centralizers: tuple[tuple[int, ...], ...]
    transporters: tuple[int, ...]
    seed: int | None = None

    def class_index(self, rep: int) -> int:
        try:
            return self.reps.index(rep)
        except ValueError:
            raise ValueError(f"element {rep} is not a chosen class representative") from None


@dataclass(frozen=True)
class PairOrbit:
    """One C(k)-orbit of pairs (g, h) with g*h = k, with its stabilizer."""

    target: int
    g: int
    h: int
    stabilizer: tuple[int, ...]
    orbit_size: int


class FiniteGroup:
    """Finite group given by its full multiplication table."""

    def __init__(
        self,
        table,
        name: str | None = None,
        validate: bool = True,
        permutations: tuple[tuple[int, ...], ...] | None = None,
    ):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name or f"group{self.order}"
        self.permutations = permutations  # realization on points, when built from one
        if self.order == 0:
            raise ValueError("a group has at least the identity element")
        if self.order > GROUP_ORDER_CAP:
            raise ValueError(f"group order {self.order} exceeds the cap {GROUP_ORDER_CAP}")
        self._inverse = self._compute_inverses()
        if validate:
            self._validate()
        self._orders: list[int | None] = [None] * self.order
        self._conjugacy: dict[int | None, ConjugacyData] = {}
        self._subgroups: dict[tuple[int, ...], Subgroup] = {}
        self._full: Subgroup | None = None

    # -- basic operations ---------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conjugate(self, t: int, g: int) -> int:
        return self.mul(self.mul(t, g), self.inv(t))

    def element_order(self, g: int) -> int:
        cached = self._orders[g]
        if cached is None:
            power, cached = g, 1
            while power != 0:
                power = self.mul(power, g)
                cached += 1
            self._orders[g] = cached
        return cached

    def exponent(self) -> int:
        return lcm(*(self.element_order(g) for g in self.elements()))

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- validation -----------------------------------------------------

    def _compute_inverses(self) -> tuple[int, ...]:
        inv = [-1] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValueError(f"element {a} has no inverse")
        return tuple(inv)

    def _validate(self) -> None:
        n = self.order
        full = set(range(n))
        for a in range(n):
            if len(self.table[a]) != n:
                raise ValueError("multiplication table is not square")
            if set(self.table[a]) != full:
                raise ValueError(f"row {a} of the multiplication table is not a permutation")
            if self.table[a][0] != a or self.table[0][a] != a:
                raise ValueError("label 0 is not a two-sided identity")
        for a in range(n):
            if set(self.table[b][a] for b in range(n)) != full:
                raise ValueError(f"column {a} of the multiplication table is not a permutation")
        if n <= _ASSOC_EXHAUSTIVE_CAP:
            for a in range(n):
                for b in range(n):
                    ab = self.table[a][b]
                    row_b = self.table[b]
                    row_ab = self.table[ab]
                    for c in range(n):
                        if row_ab[c] != self.table[a][row_b[c]]:
                            raise ValueError(f"multiplication is not associative at ({a},{b},{c})")
        else:
            # Exhaustive O(n^3) is out of reach here; a fixed-seed sample
            # plus the Latin-square checks above has to do.
            rng = random.Random(0)
            for _ in range(_ASSOC_SAMPLES):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                    raise ValueError(f"multiplication is not associative at ({a},{b},{c})")

    # -- conjugacy -------------------------------------------------------

    def conjugacy(self, seed: int | None = None) -> ConjugacyData:
        if seed not in self._conjugacy:
            self._conjugacy[seed] = _build_conjugacy(self, seed)
        return self._conjugacy[seed]

    # -- subgroups --------------------------------------------------------

    def subgroup(self, elements) -> "Subgroup":
        elems = tuple(sorted(set(int(x) for x in elements)))
        if elems not in self._subgroups:
            self._subgroups[elems] = Subgroup(self, elems)
        return self._subgroups[elems]

    def full(self) -> "Subgroup":
        if self._full is None:
            self._full = self.subgroup(range(self.order))
        return self._full


def _build_conjugacy(group: FiniteGroup, seed: int | None) -> ConjugacyData:
    n = group.order
    seen = [False] * n
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        orbit = sorted({group.conjugate(t, g) for t in range(n)})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    rng = random.Random(seed) if seed is not None else None
    reps = tuple(cls[0] if rng is None else rng.choice(cls) for cls in classes)
    class_of = [0] * n
    for idx, cls in enumerate(classes):
        for x in cls:
            class_of[x] = idx
    centralizers = tuple(
        tuple(t for t in range(n) if group.mul(t, rep) == group.mul(rep, t)) for rep in reps
    )
    transporters = [0] * n
    for idx, cls in enumerate(classes):
        rep = reps[idx]
        for target in cls:
            candidates = [t for t in range(n) if group.conjugate(t, rep) == target]
            transporters[target] = candidates[0] if rng is None else rng.choice(candidates)
    return ConjugacyData(
        classes=tuple(classes),
        reps=reps,
        class_of=tuple(class_of),
        centralizers=centralizers,
        transporters=tuple(transporters),
        seed=seed,
    )


def pair_orbits(
    group: FiniteGroup,
    k: int,
    conj: ConjugacyData | None = None,
    seed: int | None = None,
) -> tuple[PairOrbit, ...]:
    """C(k)-orbit representatives of {(g, h) : g*h = k}, with stabilizers.

    The orbit list is canonical (ordered by the minimal pair in each orbit);
    the seed only reshuffles which pair represents its orbit.
    """
    if conj is None:
        conj = group.conjugacy(seed)
    ci = conj.class_index(k)
    cent = conj.centralizers[ci]
    pending = {(group.mul(k, group.inv(h)), h) for h in group.elements()}
    rng = random.Random(seed * 100003 + k) if seed is not None else None
    orbits = []
    while pending:
        start = min(pending)
        orbit = sorted(
            {(group.conjugate(c, start[0]), group.conjugate(c, start[1])) for c in cent}
        )
        pending.difference_update(orbit)
        g, h = orbit[0] if rng is None else rng.choice(orbit)
        stab = tuple(
            c
            for c in cent
            if group.mul(c, g) == group.mul(g, c) and group.mul(c, h) == group.mul(h, c)
        )
        if len(orbit) * len(stab) != len(cent):
            raise AssertionError("orbit-stabilizer mismatch in pair enumeration")
        orbits.append(
            PairOrbit(target=k, g=g, h=h, stabilizer=stab, orbit_size=len(orbit))
        )
    return tuple(orbits)


def generated_subgroup(group: FiniteGroup, elements) -> tuple[int, ...]:
    """Closure of a set of elements under multiplication (hence inversion)."""
    closure = {0}
    gens = [int(x) for x in elements]
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for gen in gens:
            y = group.mul(x, gen)
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    return tuple(sorted(closure))


class Subgroup:
    """A subgroup presented as a subset of ambient element labels.

    All group operations stay in ambient labels; the subgroup only adds its
    own conjugacy partition (conjugation by subgroup elements).  Instances
    are cached on the ambient group, so identity comparison is meaningful.
    """

    def __init__(self, ambient: FiniteGroup, elements: tuple[int, ...]):
        self.ambient = ambient
        self.elements = elements
        self.order = len(elements)
        self.position = {x: i for i, x in enumerate(elements)}
        if 0 not in self.position:
            raise ValueError("a subgroup must contain the identity")
        for x in elements:
            for y in elements:
                if ambient.mul(x, y) not in self.position:
                    raise ValueError("element set is not closed under multiplication")
        self._classes: tuple[tuple[int, ...], ...] | None = None
        self._class_of: dict[int, int] | None = None
        self._char_table = None  # filled in by characters.character_table

    def mul(self, a: int, b: int) -> int:
        return self.ambient.mul(a, b)

    def inv(self, a: int) -> int:
        return self.ambient.inv(a)

    def element_order(self, g: int) -> int:
        return self.ambient.element_order(g)

    def exponent(self) -> int:
        return lcm(*(self.element_order(g) for g in self.elements))

    def contains(self, x: int) -> bool:
        return x in self.position

    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in self.elements)

    def _ensure_classes(self) -> None:
        if self._classes is not None:
            return
        seen = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            orbit = sorted({self.ambient.conjugate(t, g) for t in self.elements})
            seen.update(orbit)
            classes.append(tuple(orbit))
        self._classes = tuple(classes)
        self._class_of = {x: i for i, cls in enumerate(classes) for x in cls}

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        self._ensure_classes()
        return self._classes

    @property
    def class_reps(self) -> tuple[int, ...]:
        return tuple(cls[0] for cls in self.classes)

    def class_of(self, x: int) -> int:
        self._ensure_classes()
        try:
            return self._class_of[x]
        except KeyError:
            raise ValueError(f"element {x} does not lie in the subgroup") from None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.ambient.name})"


# -- construction ----------------------------------------------------------


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i)): apply q first.
    return tuple(p[q[i]] for i in range(len(p)))


def group_from_generators(perms, degree: int, name: str | None = None) -> FiniteGroup:
    """Group generated by permutations of {0..degree-1}, labeled by discovery order."""
    if degree < 1 or degree > _PERMUTATION_DEGREE_CAP:
        raise ValueError(f"permutation degree must be in 1..{_PERMUTATION_DEGREE_CAP}")
    gens = []
    for p in perms:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"{p} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    identity = tuple(range(degree))
    labels = {identity: 0}
    order_list = [identity]
    frontier = [identity]
    while frontier:
        current = frontier.pop(0)
        for gen in gens:
            candidate = _compose(current, gen)
            if candidate not in labels:
                if len(order_list) >= GROUP_ORDER_CAP:
                    raise ValueError(f"generated group exceeds the cap {GROUP_ORDER_CAP}")
                labels[candidate] = len(order_list)
                order_list.append(candidate)
                frontier.append(candidate)
    table = [
        [labels[_compose(a, b)] for b in order_list]
        for a in order_list
    ]
    return FiniteGroup(table, name=name, validate=False, permutations=tuple(order_list))


def group_from_cayley_table(table, name: str | None = None) -> FiniteGroup:
    return FiniteGroup(table, name=name, validate=True)


def _cycles_to_permutation(cycles, degree: int) -> tuple[int, ...]:
    perm = list(range(degree))
    for cycle in cycles:
        pts = [int(p) - 1 for p in cycle]
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError(f"cycle {cycle} leaves the range 1..{degree}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"cycle {cycle} repeats a point")
        for i, p in enumerate(pts):
            perm[p] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def build_group(spec: dict) -> FiniteGroup:
    """Build a group from its JSON description.

    Two forms are accepted:
    ``{"type": "permutation", "degree": n, "generators": [[cycle, ...], ...]}``
    with 1-based cycles, and ``{"type": "cayley", "table": [[...], ...]}``
    with 0-based row-major labels and the identity at label 0.
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError("group description must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "permutation":
        degree = int(spec.get("degree", 0))
        gens = [_cycles_to_permutation(g, degree) for g in spec.get("generators", [])]
        return group_from_generators(gens, degree, name=spec.get("name"))
    if kind == "cayley":
        return group_from_cayley_table(spec["table"], name=spec.get("name"))
    raise ValueError(f"unknown group description type {kind!r}")


# -- builtin families -------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"cyclic{n}", validate=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n; label = i + n*j for r^i s^j."""
    if n < 1:
        raise ValueError("dihedral parameter must be positive")

    def mul(a, b):
        i, j = a % n, a // n
        k, l = b % n, b // n
        rot = (i + (k if j == 0 else -k)) % n
        return rot + n * ((j + l) % 2)

    table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return FiniteGroup(table, name=f"dihedral{n}", validate=False)


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group parameter must be positive")
    if n == 1:
        return FiniteGroup([[0]], name="symmetric1", validate=False)
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]
    return group_from_generators(gens, n, name=f"symmetric{n}")


_QUATERNION_AXES = {
    # (axis, axis) -> (sign, axis) for the unit quaternions 1, i, j, k.
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion_group() -> FiniteGroup:
    """The quaternion group of order 8, labels [1, -1, i, -i, j, -j, k, -k]."""

    def mul(a, b):
        sa, xa = 1 - 2 * (a % 2), a // 2
        sb, xb = 1 - 2 * (b % 2), b // 2
        s, x = _QUATERNION_AXES[(xa, xb)]
        s *= sa * sb
        return 2 * x + (0 if s > 0 else 1)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(table, name="quaternion8", validate=False)
