"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples ``(a_0, ..., a_n)``.  The monomial order is
graded reverse lexicographic with ``x_0 > x_1 > ... > x_n``; everything that
lists monomials (bases, term lists, text output) uses it, largest first.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DegreeTooHigh, PolySyntaxError
from .field import PrimeField

Monomial = tuple


def degrevlex_key(mono: Monomial):
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(mono), tuple(-a for a in reversed(mono)))


def _monomials(nvars: int, k: int):
    if nvars == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in _monomials(nvars - 1, k - a):
            yield (a,) + rest


@dataclass(frozen=True)
class GradedBasis:
    nvars: int
    degree: int
    monomials: tuple
    index: Mapping = dc_field(repr=False, compare=False)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


@lru_cache(maxsize=512)
def graded_monomials(nvars: int, k: int) -> GradedBasis:
    """All degree-``k`` monomials in ``nvars`` variables, degrevlex descending."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if k < 0:
        return GradedBasis(nvars, k, (), {})
    monos = sorted(_monomials(nvars, k), key=degrevlex_key, reverse=True)
    assert len(monos) == comb(k + nvars - 1, nvars - 1)
    return GradedBasis(nvars, k, tuple(monos), {m: i for i, m in enumerate(monos)})


def _clean(coeffs):
    return {e: c for e, c in coeffs.items() if c}


class Poly:
    """Polynomial in ``nvars`` variables.

    Coefficients are ``int``/``Fraction`` when ``field`` is None, otherwise
    residues mod ``field.p``.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "field", "_coeffs", "_terms")

    def __init__(self, nvars: int, coeffs: Mapping | Iterable = (), field: PrimeField | None = None):
        self.nvars = nvars
        self.field = field
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, c in items:
            e = tuple(int(a) for a in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            acc[e] = acc.get(e, 0) + c
        if field is not None:
            acc = {e: field.reduce(c) for e, c in acc.items()}
        else:
            acc = {e: (c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c)
                   for e, c in acc.items()}
        self._coeffs = _clean(acc)
        self._terms = None

    # construction helpers
    @classmethod
    def variable(cls, nvars: int, i: int, field=None) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, field)

    @classmethod
    def constant(cls, nvars: int, c, field=None) -> "Poly":
        return cls(nvars, {(0,) * nvars: c}, field)

    # views
    @property
    def coeffs(self) -> Mapping:
        return self._coeffs

    @property
    def terms(self) -> list:
        if self._terms is None:
            self._terms = sorted(self._coeffs.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)
        return self._terms

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self._coeffs.items())))

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._coeffs}) <= 1

    def leading_term(self):
        return self.terms[0] if self._coeffs else None

    # arithmetic
    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("incompatible polynomials")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other, self.field)
        self._check(other)
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return Poly(self.nvars, acc, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self._coeffs.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self._coeffs.items()}, self.field)
        self._check(other)
        acc: dict = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Poly(self.nvars, acc, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(self.nvars, 1, self.field)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, mono: Monomial) -> "Poly":
        """Multiply by a monomial."""
        return Poly(self.nvars, {tuple(a + b for a, b in zip(e, mono)): c
                                 for e, c in self._coeffs.items()}, self.field)

    def derivative(self, i: int) -> "Poly":
        acc = {}
        for e, c in self._coeffs.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                acc[tuple(e2)] = c * e[i]
        return Poly(self.nvars, acc, self.field)

    def reduce(self, field: PrimeField) -> "Poly":
        if self.field is not None:
            if self.field != field:
                raise ValueError("polynomial already lives over another field")
            return self
        return Poly(self.nvars, self._coeffs, field)

    def evaluate(self, point: Sequence, field: PrimeField | None = None):
        return evaluate(self, point, field)

    def substitute(self, i: int, value) -> "Poly":
        """Set ``x_i = value`` (keeps the variable count)."""
        acc: dict = {}
        for e, c in self._coeffs.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            acc[tuple(e2)] = acc.get(tuple(e2), 0) + c * value ** k
        return Poly(self.nvars, acc, self.field)

    # serialization
    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        out = []
        for e, c in self.terms:
            neg = c < 0 if self.field is None else False
            a = -c if neg else c
            factors = [f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
            if a != 1 or not factors:
                factors.insert(0, str(a))
            s = "*".join(factors)
            if not out:
                out.append("-" + s if neg else s)
            else:
                out.append(("- " if neg else "+ ") + s)
        return " ".join(out)

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "terms": [{"c": str(c), "e": list(e)} for e, c in self.terms]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["nvars"]), [(tuple(t["e"]), Fraction(t["c"])) for t in obj["terms"]])


def evaluate(f: Poly, point: Sequence, field: PrimeField | None = None):
    """Value of ``f`` at ``point``; exact over Q, or in GF(p) if a field is given."""
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nvars}")
    field = field or f.field
    if field is None:
        total = 0
        for e, c in f.coeffs.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= Fraction(x) ** k if isinstance(x, str) else x ** k
            total += t
        return total
    p = field.p
    pt = [field.reduce(Fraction(x) if isinstance(x, str) else x) for x in point]
    total = 0
    for e, c in f.coeffs.items():
        t = field.reduce(c)
        for x, k in zip(pt, e):
            if k:
                t = t * pow(x, k, p) % p
        total += t
    return total % p


def jacobian(f: Poly) -> list[Poly]:
    """Partial derivatives ``[f_0, ..., f_n]``."""
    return [f.derivative(i) for i in range(f.nvars)]


def chebyshev_poly(d: int) -> Poly:
    """T_d as a one-variable integer polynomial."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    prev = {(0,): 1}
    if d == 0:
        return Poly(1, prev)
    cur = {(1,): 1}
    for _ in range(d - 1):
        nxt = {}
        for (k,), c in cur.items():
            nxt[(k + 1,)] = nxt.get((k + 1,), 0) + 2 * c
        for e, c in prev.items():
            nxt[e] = nxt.get(e, 0) - c
        prev, cur = cur, _clean(nxt)
    return Poly(1, cur)


def homogenize(g: Poly, target_degree: int, new_var: int = 0) -> Poly:
    """Homogenize ``g`` to ``target_degree`` with an extra variable inserted at position ``new_var``."""
    if g.degree > target_degree:
        raise DegreeTooHigh(f"degree {g.degree} exceeds target {target_degree}")
    acc = {}
    for e, c in g.coeffs.items():
        e2 = list(e)
        e2.insert(new_var, target_degree - sum(e))
        acc[tuple(e2)] = c
    return Poly(g.nvars + 1, acc, g.field)


def dehomogenize(f: Poly, var: int = 0) -> Poly:
    """Set ``x_var = 1`` and drop the variable."""
    acc: dict = {}
    for e, c in f.coeffs.items():
        e2 = e[:var] + e[var + 1:]
        acc[e2] = acc.get(e2, 0) + c
    return Poly(f.nvars - 1, acc, f.field)


# --- text format -----------------------------------------------------------

_NUMBER = re.compile(r"\d+(?:/\d+)?")
_VARIABLE = re.compile(r"x(\d+)")
_EXPONENT = re.compile(r"\d+")


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse ``c*x0^a0*x1^a1 + ...``; ``nvars`` defaults to 1 + the largest index seen."""
    pos = 0
    terms = []  # (sign, coeff, {var: exp})
    sign = 1
    expect_term = True
    coeff, powers, pending_star = None, {}, False
    n = len(text)

    def flush(at):
        nonlocal coeff, powers
        if coeff is None and not powers:
            raise PolySyntaxError("empty term", at)
        terms.append((sign, coeff if coeff is not None else Fraction(1), powers))
        coeff, powers = None, {}

    first = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        ch = text[pos]
        if ch in "+-":
            if not expect_term or pending_star:
                if pending_star:
                    raise PolySyntaxError("expected factor", pos)
                flush(pos)
                expect_term = True
                sign = 1 if ch == "+" else -1
                first = False
            elif first:
                sign = 1 if ch == "+" else -1
                first = False
            else:
                raise PolySyntaxError("unexpected sign", pos)
            pos += 1
            continue
        first = False
        if not expect_term and not pending_star:
            raise PolySyntaxError("expected operator", pos)
        m = _NUMBER.match(text, pos)
        if m:
            if coeff is not None or powers:
                raise PolySyntaxError("coefficient must lead the term", pos)
            c = Fraction(m.group())
            coeff = c
            pos = m.end()
        elif ch == "x":
            m = _VARIABLE.match(text, pos)
            if not m:
                raise PolySyntaxError("expected variable index", pos + 1)
            var = int(m.group(1))
            pos = m.end()
            exp = 1
            j = pos
            while j < n and text[j].isspace():
                j += 1
            if j < n and text[j] == "^":
                j += 1
                while j < n and text[j].isspace():
                    j += 1
                m2 = _EXPONENT.match(text, j)
                if not m2:
                    raise PolySyntaxError("expected exponent", j)
                exp = int(m2.group())
                pos = m2.end()
            powers[var] = powers.get(var, 0) + exp
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", pos)
        expect_term = False
        pending_star = False
        j = pos
        while j < n and text[j].isspace():
            j += 1
        if j < n and text[j] == "*":
            pending_star = True
            pos = j + 1
    if pending_star:
        raise PolySyntaxError("expected factor", pos)
    if expect_term:
        raise PolySyntaxError("expected term", pos)
    flush(pos)
    top = max((v for _, _, pw in terms for v in pw), default=-1)
    if nvars is None:
        nvars = top + 1
    elif top >= nvars:
        raise PolySyntaxError(f"variable x{top} out of range for {nvars} variables", 0)
    nvars = max(nvars, 1)
    acc = []
    for s, c, pw in terms:
        e = [0] * nvars
        for v, k in pw.items():
            e[v] = k
        acc.append((tuple(e), s * c))
    return Poly(nvars, acc)
