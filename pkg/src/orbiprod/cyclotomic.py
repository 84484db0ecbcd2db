"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is stored as the residue of a rational polynomial modulo the n-th
cyclotomic polynomial, at the smallest conductor whose field contains the
value (rationals always sit at conductor 1).  Every constructor and every
arithmetic operation re-canonicalizes, so equality and hashing are purely
structural: two values are equal iff their (conductor, coefficients) pairs
coincide.

Text syntax: ``E(n)`` denotes a primitive n-th root of unity; together with
integers, fractions ``a/b``, parentheses and the operators ``+ - * / ^``
this gives expressions such as ``1/3+2/3*E(7)^5``.  :func:`parse_value` and
``str()`` round-trip exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

__all__ = [
    "Cyclotomic",
    "zeta",
    "parse_value",
    "cyclotomic_polynomial",
    "euler_phi",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division is exact by construction.
    num = list(num)
    m = len(den) - 1
    quot = [0] * (len(num) - m)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + m]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:m]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Monic integer coefficients (constant term first) of Phi_n.

    Computed by dividing x^n - 1 by Phi_d for all proper divisors d.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _int_poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list modulo Phi_n; returns exactly phi(n) entries."""
    phi = cyclotomic_polynomial(n)
    m = len(phi) - 1
    cs = list(coeffs)
    if len(cs) < m:
        cs += [_ZERO] * (m - len(cs))
    for i in range(len(cs) - 1, m - 1, -1):
        c = cs[i]
        if c:
            base = i - m
            for j in range(m):
                if phi[j]:
                    cs[base + j] -= c * phi[j]
            cs[i] = _ZERO
    return tuple(cs[:m])


def _lift_coeffs(cs: tuple[Fraction, ...], m: int, n: int) -> tuple[Fraction, ...]:
    # Embed Q(zeta_m) into Q(zeta_n) via zeta_m = zeta_n^(n/m), m | n.
    if m == n:
        return cs
    k = n // m
    out = [_ZERO] * ((len(cs) - 1) * k + 1 if cs else 1)
    for i, c in enumerate(cs):
        if c:
            out[i * k] = c
    return _reduce_mod_phi(out, n)


@lru_cache(maxsize=None)
def _embed_columns(n: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    # Column j is the conductor-n representation of zeta_d^j.
    cols = []
    step = n // d
    for j in range(euler_phi(d)):
        mono = [_ZERO] * (j * step + 1)
        mono[j * step] = _ONE
        cols.append(_reduce_mod_phi(mono, n))
    return tuple(cols)


@lru_cache(maxsize=None)
def _subfield_solver(n: int, d: int):
    """Row subset and inverse matrix used to test membership in Q(zeta_d)."""
    cols = _embed_columns(n, d)
    k = len(cols)
    rows_all = len(cols[0])
    # Pick k rows on which the embedding matrix is invertible.
    chosen: list[int] = []
    basis: list[tuple[int, list[Fraction]]] = []
    for i in range(rows_all):
        red = [cols[j][i] for j in range(k)]
        for pivot, brow in basis:
            c = red[pivot]
            if c:
                red = [v - c * w for v, w in zip(red, brow)]
        pivot = next((j for j in range(k) if red[j] != 0), None)
        if pivot is None:
            continue
        inv = _ONE / red[pivot]
        basis.append((pivot, [v * inv for v in red]))
        chosen.append(i)
        if len(chosen) == k:
            break
    if len(chosen) != k:
        raise ArithmeticError("embedding matrix is rank deficient")
    # Invert the k x k submatrix at the chosen rows by Gauss-Jordan.
    sub = [[cols[j][i] for j in range(k)] for i in chosen]
    aug = [list(row) + [_ONE if s == r else _ZERO for s in range(k)] for r, row in enumerate(sub)]
    for c in range(k):
        piv = next(r for r in range(c, k) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = _ONE / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    inverse = tuple(tuple(row[k:]) for row in aug)
    return tuple(chosen), inverse


def _descend(n: int, d: int, cs: tuple[Fraction, ...]):
    # Coefficients of cs in the conductor-d basis, or None if not in Q(zeta_d).
    if d == 1:
        if any(cs[1:]):
            return None
        return (cs[0],)
    rows, inverse = _subfield_solver(n, d)
    sub = [cs[i] for i in rows]
    cand = [sum(inverse[r][j] * sub[j] for j in range(len(sub))) for r in range(len(sub))]
    cols = _embed_columns(n, d)
    for i in range(len(cs)):
        acc = _ZERO
        for j, cj in enumerate(cand):
            if cj:
                acc += cj * cols[j][i]
        if acc != cs[i]:
            return None
    return tuple(cand)


def _canonicalize(n: int, cs: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    while n > 1:
        if not any(cs[1:]):
            return 1, (cs[0],)
        for p in _prime_factors(n):
            down = _descend(n, n // p, cs)
            if down is not None:
                n, cs = n // p, down
                break
        else:
            break
    return n, cs


class Cyclotomic:
    """An exact element of some Q(zeta_n), always kept in canonical form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, value: "int | Fraction | Cyclotomic" = 0):
        if isinstance(value, Cyclotomic):
            object.__setattr__(self, "conductor", value.conductor)
            object.__setattr__(self, "coeffs", value.coeffs)
        elif isinstance(value, (int, Fraction)):
            object.__setattr__(self, "conductor", 1)
            object.__setattr__(self, "coeffs", (Fraction(value),))
        else:
            raise TypeError(f"cannot build a cyclotomic from {type(value).__name__}")

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @staticmethod
    def _raw(conductor: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(Cyclotomic)
        object.__setattr__(obj, "conductor", conductor)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @staticmethod
    def _make(n: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        n, cs = _canonicalize(n, coeffs)
        return Cyclotomic._raw(n, cs)

    # -- predicates and extraction ------------------------------------

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_fraction(self):
        """The value as a Fraction, or None if irrational."""
        return self.coeffs[0] if self.conductor == 1 else None

    def as_integer(self):
        """The value as an int if it is a rational integer, else None."""
        if self.conductor == 1 and self.coeffs[0].denominator == 1:
            return int(self.coeffs[0])
        return None

    def sort_key(self):
        return (self.conductor, self.coeffs)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic(value)
        return None

    def _lift(self, n: int) -> tuple[Fraction, ...]:
        return _lift_coeffs(self.coeffs, self.conductor, n)

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return Cyclotomic._raw(1, (self.coeffs[0] + other.coeffs[0],))
        n = lcm(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        return Cyclotomic._make(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return Cyclotomic._raw(1, (self.coeffs[0] * other.coeffs[0],))
        if self.conductor == 1:
            q = self.coeffs[0]
            if q == 0:
                return Cyclotomic._raw(1, (_ZERO,))
            return Cyclotomic._make(other.conductor, tuple(q * c for c in other.coeffs))
        if other.conductor == 1:
            return other * self
        n = lcm(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._make(n, _reduce_mod_phi(prod, n))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if self.conductor == 1:
            return Cyclotomic._raw(1, (1 / self.coeffs[0],))
        n = self.conductor
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r0, r1 = phi, list(self.coeffs)
        t0, t1 = [_ZERO], [_ONE]
        while any(c != 0 for c in r1):
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _frac_poly_sub(t0, _frac_poly_mul(q, t1))
        # r0 is a nonzero constant: gcd(f, Phi_n) since Phi_n is irreducible.
        const = next(c for c in r0 if c != 0)
        inv = [c / const for c in t0]
        return Cyclotomic._make(n, _reduce_mod_phi(inv, n))

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            if other.coeffs[0] == 0:
                raise ZeroDivisionError("division by zero in a cyclotomic field")
            return Cyclotomic._raw(1, (self.coeffs[0] / other.coeffs[0],))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- Galois action ---------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k; k = -1 is complex conjugation."""
        n = self.conductor
        if n == 1:
            return self
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"exponent {k} is not invertible modulo conductor {n}")
        out = [_ZERO] * n
        for i, c in enumerate(self.coeffs):
            if c:
                out[(i * k) % n] += c
        return Cyclotomic._make(n, _reduce_mod_phi(out, n))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- structural protocol ---------------------------------------------

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is None:
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.conductor == 1:
            return str(self.coeffs[0])
        n = self.conductor
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append((c < 0, str(abs(c))))
                continue
            mono = f"E({n})" if j == 1 else f"E({n})^{j}"
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((c < 0, body))
        if not parts:
            return "0"
        text = ""
        for i, (negative, body) in enumerate(parts):
            if i == 0:
                text = ("-" if negative else "") + body
            else:
                text += ("-" if negative else "+") + body
        return text

    def __repr__(self):
        return f"Cyclotomic({str(self)!r})"


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _frac_poly_trim(out)


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _frac_poly_trim(out)


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = _frac_poly_trim(list(a))
    b = _frac_poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    quot = [_ZERO] * (len(a) - len(b) + 1)
    lead = b[-1]
    rem = list(a)
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, d in enumerate(b):
                rem[i + j] -= c * d
    return _frac_poly_trim(quot), _frac_poly_trim(rem)


def zeta(n: int, power: int = 1) -> Cyclotomic:
    """The root of unity E(n)^power as a canonical value."""
    if n < 1:
        raise ValueError("order of a root of unity must be positive")
    power %= n
    mono = [_ZERO] * (power + 1)
    mono[power] = _ONE
    return Cyclotomic._make(n, _reduce_mod_phi(mono, n))


# -- parser --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(E)|(\^)|(\()|(\))|(\+)|(-)|(\*)|(/))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad character in value at position {pos}: {text[pos:]!r}")
            break
        tokens.append(match.group().strip())
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of value expression")
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r} but found {tok!r}")
        self.pos += 1
        return tok

    def parse_expr(self) -> Cyclotomic:
        value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Cyclotomic:
        value = self.parse_unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.parse_unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def parse_unary(self) -> Cyclotomic:
        if self.peek() == "-":
            self.take()
            return -self.parse_unary()
        if self.peek() == "+":
            self.take()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Cyclotomic:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            digits = self.take()
            if not digits.isdigit():
                raise ValueError(f"expected integer exponent, found {digits!r}")
            base = base ** (sign * int(digits))
        return base

    def parse_atom(self) -> Cyclotomic:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of value expression")
        if tok.isdigit():
            self.take()
            return Cyclotomic(int(tok))
        if tok == "E":
            self.take()
            self.take("(")
            digits = self.take()
            if not digits.isdigit():
                raise ValueError(f"expected integer order in E(...), found {digits!r}")
            self.take(")")
            return zeta(int(digits))
        if tok == "(":
            self.take()
            value = self.parse_expr()
            self.take(")")
            return value
        raise ValueError(f"unexpected token {tok!r} in value expression")


def parse_value(text: str) -> Cyclotomic:
    """Parse the textual cyclotomic syntax; inverse of ``str()``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty value expression")
    parser = _Parser(tokens)
    value = parser.parse_expr()
    if parser.pos != len(tokens):
        raise ValueError(f"trailing tokens in value expression: {tokens[parser.pos:]}")
    return value
