"""Exact class-function calculus over cyclotomic values.

Character tables are computed by the classical modular method: pick a prime
p = 1 (mod exponent) with p^2 > 4|H|, split the class-algebra matrices over
F_p into common one-dimensional eigenspaces, then lift eigenvalue
multiplicities back to exact roots of unity.  Cyclic groups get a direct
construction.  Anything the modular path cannot finish raises
ContractViolation; there is no approximate fallback.

On top of the tables: induction, conjugation transport, Adams operations,
exterior powers via Newton's identities, the alternating sum of exterior
powers of a dual, invariant-subspace characters, and a truncated
Hilbert-series consistency check for fixed loci.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .cyclotomic import Cyclotomic, zeta
from .errors import ContractViolation
from .groups import FiniteGroup, Subgroup, generated_subgroup

__all__ = [
    "ClassFunction",
    "CharacterTable",
    "character_table",
    "class_function",
    "trivial_character",
    "zero_character",
    "regular_character",
    "inner_product",
    "decompose",
    "integer_decompose",
    "is_honest",
    "induce",
    "restrict_transport",
    "adams",
    "exterior_power",
    "lambda_minus_one_dual",
    "fixed_subspace_character",
    "molien_check",
]

_C0 = Cyclotomic(0)
_C1 = Cyclotomic(1)


@dataclass(frozen=True)
class ClassFunction:
    """An exact class function on a subgroup, one value per conjugacy class."""

    domain: Subgroup
    values: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.values) != len(self.domain.classes):
            raise ValueError("one value per conjugacy class is required")

    def value_at(self, x: int) -> Cyclotomic:
        return self.values[self.domain.class_of(x)]

    def degree(self) -> int:
        d = self.values[self.domain.class_of(0)].as_integer()
        if d is None:
            raise ValueError("value at the identity is not an integer")
        return d

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def dual(self) -> "ClassFunction":
        """Pointwise complex conjugate; the character of the dual space."""
        return ClassFunction(self.domain, tuple(v.conjugate() for v in self.values))

    def _check_domain(self, other: "ClassFunction") -> None:
        if self.domain is not other.domain:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_domain(other)
        return ClassFunction(self.domain, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_domain(other)
        return ClassFunction(self.domain, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.domain, tuple(-a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check_domain(other)
            return ClassFunction(
                self.domain, tuple(a * b for a, b in zip(self.values, other.values))
            )
        if isinstance(other, (int, Fraction, Cyclotomic)):
            scalar = Cyclotomic(other) if not isinstance(other, Cyclotomic) else other
            return ClassFunction(self.domain, tuple(a * scalar for a in self.values))
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(str(v) for v in self.values)
        return f"ClassFunction[{body}]"


def class_function(domain: Subgroup, values) -> ClassFunction:
    vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic(v) for v in values)
    return ClassFunction(domain, vals)


def trivial_character(domain: Subgroup) -> ClassFunction:
    return ClassFunction(domain, (_C1,) * len(domain.classes))


def zero_character(domain: Subgroup) -> ClassFunction:
    return ClassFunction(domain, (_C0,) * len(domain.classes))


def regular_character(domain: Subgroup) -> ClassFunction:
    values = [_C0] * len(domain.classes)
    values[domain.class_of(0)] = Cyclotomic(domain.order)
    return ClassFunction(domain, tuple(values))


@dataclass(frozen=True)
class CharacterTable:
    """All irreducible characters of a subgroup, in canonical order."""

    domain: Subgroup
    irreducibles: tuple[ClassFunction, ...]
    class_sizes: tuple[int, ...]
    element_orders: tuple[int, ...]

    @property
    def trivial_index(self) -> int:
        for i, chi in enumerate(self.irreducibles):
            if all(v == _C1 for v in chi.values):
                return i
        raise ContractViolation("character table without a trivial character")

    def index_of(self, chi: ClassFunction) -> int:
        for i, row in enumerate(self.irreducibles):
            if row.values == chi.values:
                return i
        raise ValueError("class function is not a row of the table")


def inner_product(phi: ClassFunction, psi: ClassFunction) -> Cyclotomic:
    """(1/|H|) sum_h phi(h) conj(psi(h)), exactly."""
    phi._check_domain(psi)
    dom = phi.domain
    acc = _C0
    for size, a, b in zip((len(c) for c in dom.classes), phi.values, psi.values):
        acc = acc + a * b.conjugate() * size
    return acc * Fraction(1, dom.order)


def decompose(phi: ClassFunction) -> tuple[Cyclotomic, ...]:
    table = character_table(phi.domain)
    return tuple(inner_product(phi, chi) for chi in table.irreducibles)


def integer_decompose(phi: ClassFunction) -> tuple[int, ...]:
    mults = []
    for m in decompose(phi):
        value = m.as_integer()
        if value is None:
            raise ContractViolation(f"multiplicity {m} is not an integer")
        mults.append(value)
    return tuple(mults)


def is_honest(phi: ClassFunction) -> bool:
    """True when phi has nonnegative integer multiplicities in the irreducibles."""
    for m in decompose(phi):
        value = m.as_integer()
        if value is None or value < 0:
            return False
    return True


# -- table construction -----------------------------------------------------


def character_table(domain: Subgroup) -> CharacterTable:
    if domain._char_table is None:
        domain._char_table = _compute_table(domain)
    return domain._char_table


def _table_sort_key(chi: ClassFunction):
    return (chi.degree(), tuple(v.sort_key() for v in chi.values))


def _compute_table(domain: Subgroup) -> CharacterTable:
    if domain.order == 1:
        rows = [ClassFunction(domain, (_C1,))]
    elif domain.is_cyclic():
        rows = _cyclic_rows(domain)
    else:
        rows = _modular_rows(domain)
    rows.sort(key=_table_sort_key)
    if sum(chi.degree() ** 2 for chi in rows) != domain.order:
        raise ContractViolation("degrees of the computed table do not sum to the order")
    sizes = tuple(len(c) for c in domain.classes)
    orders = tuple(domain.element_order(r) for r in domain.class_reps)
    return CharacterTable(
        domain=domain,
        irreducibles=tuple(rows),
        class_sizes=sizes,
        element_orders=orders,
    )


def _cyclic_rows(domain: Subgroup) -> list[ClassFunction]:
    n = domain.order
    generator = min(g for g in domain.elements if domain.element_order(g) == n)
    log = {}
    power = 0
    for exp in range(n):
        log[power] = exp
        power = domain.mul(power, generator)
    reps = domain.class_reps  # every element is its own class
    rows = []
    for j in range(n):
        values = tuple(zeta(n, (j * log[r]) % n) for r in reps)
        rows.append(ClassFunction(domain, values))
    return rows


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _modular_prime(order: int, exponent: int) -> int:
    p = 2 * isqrt(order) + 1
    while True:
        if p % exponent == 1 and _is_prime(p):
            return p
        p += 1


def _primitive_root(p: int) -> int:
    factors = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for cand in range(2, p):
        if all(pow(cand, (p - 1) // q, p) != 1 for q in factors):
            return cand
    raise ContractViolation(f"no primitive root modulo {p}")


def _left_nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    """Rows w with w . mat = 0 over F_p, as reduced echelon rows."""
    k = len(mat)
    # Solve mat^T w^T = 0, i.e. nullspace of the transpose.
    rows = [[mat[j][i] % p for j in range(k)] for i in range(len(mat[0]))]
    pivots = []
    reduced = []
    for row in rows:
        row = list(row)
        for pc, br in zip(pivots, reduced):
            c = row[pc]
            if c:
                row = [(a - c * b) % p for a, b in zip(row, br)]
        pc = next((j for j in range(k) if row[j]), None)
        if pc is None:
            continue
        inv = pow(row[pc], p - 2, p)
        row = [a * inv % p for a in row]
        for i, br in enumerate(reduced):
            c = br[pc]
            if c:
                reduced[i] = [(a - c * b) % p for a, b in zip(br, row)]
        pivots.append(pc)
        reduced.append(row)
    free = [j for j in range(k) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * k
        vec[f] = 1
        for pc, br in zip(pivots, reduced):
            vec[pc] = (-br[f]) % p
        basis.append(vec)
    return basis


def _row_reduce(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    work = [list(r) for r in rows]
    pivots = []
    reduced = []
    for row in work:
        for pc, br in zip(pivots, reduced):
            c = row[pc]
            if c:
                row = [(a - c * b) % p for a, b in zip(row, br)]
        pc = next((j for j in range(len(row)) if row[j]), None)
        if pc is None:
            continue
        inv = pow(row[pc], p - 2, p)
        row = [a * inv % p for a in row]
        for i, br in enumerate(reduced):
            c = br[pc]
            if c:
                reduced[i] = [(a - c * b) % p for a, b in zip(br, row)]
        pivots.append(pc)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [reduced[i] for i in order], [pivots[i] for i in order]


def _sqrt_mod(a: int, p: int) -> int | None:
    a %= p
    for y in range(p):
        if y * y % p == a:
            return y
    return None


def _modular_rows(domain: Subgroup) -> list[ClassFunction]:
    classes = domain.classes
    reps = domain.class_reps
    r = len(classes)
    order = domain.order
    exponent = domain.exponent()
    p = _modular_prime(order, exponent)

    class_of = domain.class_of
    sizes = [len(c) for c in classes]

    def class_matrix(i: int) -> list[list[int]]:
        # X[k][j] = #{x in class i : x^{-1} * reps[k] in class j}.
        mat = [[0] * r for _ in range(r)]
        for k, z in enumerate(reps):
            row = mat[k]
            for x in classes[i]:
                row[class_of(domain.mul(domain.inv(x), z))] += 1
        return [[v % p for v in row] for row in mat]

    spaces: list[list[list[int]]] = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat = class_matrix(i)
        refined: list[list[list[int]]] = []
        for space in spaces:
            if len(space) == 1:
                refined.append(space)
                continue
            k = len(space)
            image = [
                [sum(row[t] * mat[t][j] for t in range(r) if row[t]) % p for j in range(r)]
                for row in space
            ]
            _, pivots = _row_reduce(space, p)
            restriction = [[image[a][pivots[b]] for b in range(k)] for a in range(k)]
            found = 0
            for lam in range(p):
                shifted = [
                    [(restriction[a][b] - (lam if a == b else 0)) % p for b in range(k)]
                    for a in range(k)
                ]
                null = _left_nullspace(shifted, p)
                if not null:
                    continue
                found += len(null)
                vectors = [
                    [sum(w[t] * space[t][j] for t in range(k) if w[t]) % p for j in range(r)]
                    for w in null
                ]
                sub, _ = _row_reduce(vectors, p)
                refined.append(sub)
                if found == k:
                    break
            if found != k:
                raise ContractViolation("class matrix failed to diagonalize over F_p")
        spaces = refined
    if any(len(s) != 1 for s in spaces):
        raise ContractViolation("class matrices did not split into one-dimensional eigenspaces")

    identity_class = class_of(0)
    inverse_class = [class_of(domain.inv(z)) for z in reps]
    zroot = _primitive_root(p)

    power_class = []
    for k, z in enumerate(reps):
        m = domain.element_order(z)
        row = []
        power = 0
        for _ in range(m):
            row.append(class_of(power))
            power = domain.mul(power, z)
        power_class.append(row)

    rows = []
    for space in spaces:
        v = list(space[0])
        scale = pow(v[identity_class], p - 2, p)
        v = [x * scale % p for x in v]  # v[k] = omega(class sum k) mod p
        dot = sum(v[k] * v[inverse_class[k]] * pow(sizes[k], p - 2, p) for k in range(r)) % p
        chi1_sq = order * pow(dot, p - 2, p) % p
        root = _sqrt_mod(chi1_sq, p)
        if root is None:
            raise ContractViolation("degree recovery failed: no square root mod p")
        degree = min(root, p - root)
        if degree == 0 or degree * degree > order:
            raise ContractViolation("recovered character degree is out of range")
        chi_mod = [degree * v[k] * pow(sizes[k], p - 2, p) % p for k in range(r)]
        values = []
        for k in range(r):
            m = domain.element_order(reps[k])
            if m == 1:
                values.append(Cyclotomic(degree))
                continue
            theta = pow(zroot, (p - 1) // m, p)
            theta_inv = pow(theta, p - 2, p)
            m_inv = pow(m, p - 2, p)
            acc = _C0
            for j in range(m):
                total = 0
                tij = pow(theta_inv, j, p)
                factor = 1
                for l in range(m):
                    total += chi_mod[power_class[k][l]] * factor
                    factor = factor * tij % p
                mult = total % p * m_inv % p
                if mult > degree:
                    raise ContractViolation("eigenvalue multiplicity exceeds the degree")
                if mult:
                    acc = acc + mult * zeta(m, j)
            values.append(acc)
        rows.append(ClassFunction(domain, tuple(values)))
    return rows


# -- operations on class functions -----------------------------------------


def induce(phi: ClassFunction, target: Subgroup) -> ClassFunction:
    """Induction from phi's domain to a containing subgroup."""
    source = phi.domain
    if source.ambient is not target.ambient:
        raise ValueError("induction requires subgroups of the same ambient group")
    if not all(target.contains(x) for x in source.elements):
        raise ValueError("induction target does not contain the source subgroup")
    weight = Fraction(1, source.order)
    values = []
    for g in target.class_reps:
        acc = _C0
        for t in target.elements:
            x = target.ambient.conjugate(target.ambient.inv(t), g)
            if source.contains(x):
                acc = acc + phi.value_at(x)
        values.append(acc * weight)
    return ClassFunction(target, tuple(values))


def restrict_transport(phi: ClassFunction, t: int, target: Subgroup) -> ClassFunction:
    """Transport along conjugation by t, then restrict: value at z is phi(t^-1 z t)."""
    ambient = phi.domain.ambient
    if target.ambient is not ambient:
        raise ValueError("transport requires subgroups of the same ambient group")
    t_inv = ambient.inv(t)
    for z in target.elements:
        if not phi.domain.contains(ambient.conjugate(t_inv, z)):
            raise ValueError("target is not contained in the transported domain")
    values = tuple(phi.value_at(ambient.conjugate(t_inv, z)) for z in target.class_reps)
    return ClassFunction(target, values)


def adams(phi: ClassFunction, k: int) -> ClassFunction:
    """The k-th power operation: value at h is phi(h^k)."""
    if k < 1:
        raise ValueError("the power operation needs a positive exponent")
    dom = phi.domain
    values = []
    for z in dom.class_reps:
        power = 0
        for _ in range(k % dom.element_order(z)):
            power = dom.mul(power, z)
        values.append(phi.value_at(power))
    return ClassFunction(dom, tuple(values))


def _power_values(phi: ClassFunction, z: int, upto: int) -> list[Cyclotomic]:
    """[phi(z^1), ..., phi(z^upto)] using the order of z."""
    dom = phi.domain
    m = dom.element_order(z)
    cache = []
    power = 0
    for _ in range(m):
        power = dom.mul(power, z)
        cache.append(phi.value_at(power))
    return [cache[(j - 1) % m] for j in range(1, upto + 1)]


def _elementary_from_powers(ps: list[Cyclotomic], upto: int) -> list[Cyclotomic]:
    # Newton's identities: m*e_m = sum_{j=1}^m (-1)^(j-1) p_j e_{m-j}.
    es = [_C1]
    for m in range(1, upto + 1):
        acc = _C0
        sign = 1
        for j in range(1, m + 1):
            term = ps[j - 1] * es[m - j]
            acc = acc + (term if sign > 0 else -term)
            sign = -sign
        es.append(acc * Fraction(1, m))
    return es


def _complete_from_powers(ps: list[Cyclotomic], upto: int) -> list[Cyclotomic]:
    # m*h_m = sum_{j=1}^m p_j h_{m-j}.
    hs = [_C1]
    for m in range(1, upto + 1):
        acc = _C0
        for j in range(1, m + 1):
            acc = acc + ps[j - 1] * hs[m - j]
        hs.append(acc * Fraction(1, m))
    return hs


def exterior_power(phi: ClassFunction, i: int) -> ClassFunction:
    """The i-th exterior power, extracted classwise by Newton's identities."""
    if i < 0:
        raise ValueError("exterior power index must be nonnegative")
    if not is_honest(phi):
        raise ValueError("exterior powers are only taken of honest characters")
    d = phi.degree()
    if i > d:
        raise ValueError(f"exterior power index {i} exceeds the degree {d}")
    dom = phi.domain
    values = []
    for z in dom.class_reps:
        ps = _power_values(phi, z, i)
        values.append(_elementary_from_powers(ps, i)[i])
    return ClassFunction(dom, tuple(values))


def lambda_minus_one_dual(phi: ClassFunction) -> ClassFunction:
    """Alternating sum of exterior powers of the dual of an honest character.

    Classwise this is det(1 - action of z^-1), the K-theory Euler class of
    the dual, which is what makes it vanish exactly where z has invariants.
    """
    if not is_honest(phi):
        raise ValueError("the alternating exterior sum needs an honest character")
    d = phi.degree()
    dom = phi.domain
    dual = phi.dual()
    values = []
    for z in dom.class_reps:
        ps = _power_values(dual, z, d)
        es = _elementary_from_powers(ps, d)
        acc = _C0
        sign = 1
        for e in es:
            acc = acc + (e if sign > 0 else -e)
            sign = -sign
        values.append(acc)
    return ClassFunction(dom, tuple(values))


def fixed_subspace_character(
    chi: ClassFunction, fixers, centralizing: Subgroup
) -> ClassFunction:
    """Character of the common invariants of <fixers> as a representation.

    chi lives on the full ambient group; the output lives on `centralizing`,
    which must commute elementwise with the subgroup generated by `fixers`.
    The value at z is the trace of z composed with the averaging projector.
    """
    ambient = centralizing.ambient
    if chi.domain is not ambient.full():
        raise ValueError("the input character must live on the full group")
    gen = generated_subgroup(ambient, fixers)
    for z in centralizing.elements:
        for a in gen:
            if ambient.mul(z, a) != ambient.mul(a, z):
                raise ValueError("subgroup does not centralize the fixing elements")
    weight = Fraction(1, len(gen))
    values = []
    for z in centralizing.class_reps:
        acc = _C0
        for a in gen:
            acc = acc + chi.value_at(ambient.mul(z, a))
        values.append(acc * weight)
    return ClassFunction(centralizing, tuple(values))


def _series_mul_trunc(a: list[Cyclotomic], b: list[Cyclotomic], upto: int) -> list[Cyclotomic]:
    out = [_C0] * (upto + 1)
    for i, x in enumerate(a[: upto + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: upto + 1 - i]):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def molien_check(chi: ClassFunction, g: int, centralizing: Subgroup, degree: int) -> bool:
    """Graded consistency of the fixed locus of g inside the ambient space.

    Checks, classwise on `centralizing` and up to the given truncation order,
    that the alternating exterior series of the dual of the moving part
    multiplied by the symmetric-algebra Hilbert series of the dual ambient
    space equals the Hilbert series of the dual fixed subspace, exactly.
    """
    if degree < 1:
        raise ValueError("truncation degree must be at least 1")
    ambient = centralizing.ambient
    if not all(ambient.mul(z, g) == ambient.mul(g, z) for z in centralizing.elements):
        raise ValueError("subgroup does not centralize the fixing element")
    fixed = fixed_subspace_character(chi, (g,), centralizing)
    restricted = fixed_subspace_character(chi, (), centralizing)
    moving = restricted - fixed
    if not is_honest(moving):
        raise ContractViolation("moving part of a fixed-locus computation is not honest")
    d_moving = moving.degree()
    dual_moving = moving.dual()
    dual_ambient = restricted.dual()
    dual_fixed = fixed.dual()
    for z in centralizing.class_reps:
        cutoff = min(d_moving, degree)
        es = _elementary_from_powers(_power_values(dual_moving, z, cutoff), cutoff)
        lam = [_C0] * (degree + 1)
        for i in range(cutoff + 1):
            lam[i] = es[i] if i % 2 == 0 else -es[i]
        hs_ambient = _complete_from_powers(_power_values(dual_ambient, z, degree), degree)
        hs_fixed = _complete_from_powers(_power_values(dual_fixed, z, degree), degree)
        left = _series_mul_trunc(lam, hs_ambient, degree)
        if left != hs_fixed[: degree + 1]:
            return False
    return True
