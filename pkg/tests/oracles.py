"""Independent brute-force oracles used by the test suite.

The character-table oracle finds all irreducibles by inducing the linear
characters of every cyclic subgroup, then greedily tensoring/reducing until
the degrees square-sum to the group order.  It deliberately reimplements
induction and inner products from scratch (group multiplication and
cyclotomic scalars are the only shared ingredients), so it exercises none
of the library's modular table path, induction, or Newton machinery.
"""

from __future__ import annotations

from fractions import Fraction

from orbiprod import Cyclotomic, zeta
from orbiprod.groups import FiniteGroup


def conjugacy_partition(group: FiniteGroup):
    seen = set()
    classes = []
    for g in group.elements():
        if g in seen:
            continue
        orbit = sorted({group.conjugate(t, g) for t in group.elements()})
        seen.update(orbit)
        classes.append(tuple(orbit))
    class_of = {x: i for i, cls in enumerate(classes) for x in cls}
    return classes, class_of


def _inner(group, classes, a, b):
    total = Cyclotomic(0)
    for cls, x, y in zip(classes, a, b):
        total = total + x * y.conjugate() * len(cls)
    return total * Fraction(1, group.order)


def _sub(a, b, coeff):
    return tuple(x - coeff * y for x, y in zip(a, b))


def _is_zero(a):
    return all(v.is_zero() for v in a)


def _cyclic_subgroups(group: FiniteGroup):
    seen = set()
    out = []
    for g in group.elements():
        elems = [0]
        power = g
        while power != 0:
            elems.append(power)
            power = group.mul(power, g)
        key = tuple(sorted(elems))
        if key not in seen:
            seen.add(key)
            out.append((g, key))
    return out


def _induced_linear_characters(group, classes, class_of):
    """Values on classes of Ind of every linear character of every cyclic subgroup."""
    rows = []
    n = group.order
    for generator, elems in _cyclic_subgroups(group):
        m = len(elems)
        log = {}
        power = 0
        for exp in range(m):
            log[power] = exp
            power = group.mul(power, generator)
        member = set(elems)
        for j in range(m):
            values = []
            for cls in classes:
                rep = cls[0]
                acc = Cyclotomic(0)
                for t in group.elements():
                    x = group.conjugate(group.inv(t), rep)
                    if x in member:
                        acc = acc + zeta(m, (j * log[x]) % m)
                values.append(acc * Fraction(1, m))
            rows.append(tuple(values))
    return rows


def brute_force_character_table(group: FiniteGroup):
    """All irreducible characters, as value tuples sorted canonically.

    Raises RuntimeError if the tensor-generate-and-reduce loop stalls.  The
    greedy reduction completes on every group the suite points it at
    (cyclic groups, S3, D4, Q8); it is not meant as a general algorithm.
    """
    classes, class_of = conjugacy_partition(group)
    r = len(classes)
    found: list[tuple[Cyclotomic, ...]] = []

    def reduce_candidate(cand):
        for chi in found:
            coeff = _inner(group, classes, cand, chi)
            if not coeff.is_zero():
                cand = _sub(cand, chi, coeff)
        return cand

    def consider(cand):
        cand = reduce_candidate(cand)
        if _is_zero(cand):
            return None
        norm = _inner(group, classes, cand, cand)
        if norm == Cyclotomic(1):
            degree = cand[class_of[0]]
            if degree.as_fraction() is not None and degree.as_fraction() < 0:
                cand = tuple(-v for v in cand)
            found.append(cand)
            return None
        return cand

    pool = _induced_linear_characters(group, classes, class_of)
    remainders: list[tuple[Cyclotomic, ...]] = []
    for cand in pool:
        rest = consider(cand)
        if rest is not None:
            remainders.append(rest)

    def degrees_complete():
        total = 0
        for chi in found:
            d = chi[class_of[0]].as_integer()
            total += d * d
        return total == group.order

    def alternating_square(values):
        out = []
        for cls, v in zip(classes, values):
            rep = cls[0]
            v2 = values[class_of[group.mul(rep, rep)]]
            out.append((v * v - v2) * Fraction(1, 2))
        return tuple(out)

    rounds = 0
    while not degrees_complete():
        rounds += 1
        if rounds > 8 or len(remainders) > 64:
            raise RuntimeError("character oracle stalled")
        # newly found irreducibles may reduce earlier remainders further
        survivors = []
        for rem in remainders:
            rest = consider(rem)
            if rest is not None and rest not in survivors:
                survivors.append(rest)
        remainders = survivors
        if degrees_complete():
            break
        candidates = []
        for rem in remainders:
            for chi in found:
                candidates.append(tuple(a * b for a, b in zip(rem, chi)))
            candidates.append(alternating_square(rem))
        for a in remainders[:12]:
            for b in remainders[:12]:
                candidates.append(tuple(x * y for x, y in zip(a, b)))
        for cand in candidates:
            rest = consider(cand)
            if rest is not None and rest not in remainders:
                remainders.append(rest)
    rows = sorted(
        found,
        key=lambda chi: (chi[class_of[0]].sort_key(), tuple(v.sort_key() for v in chi)),
    )
    return classes, rows
