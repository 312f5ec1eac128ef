"""Nodes: verification, the Chebyshev family, defects of point sets, and
graded pieces of symbolic powers of the node ideal.

Node coordinates either are rationals (reducible mod any prime) or live in a
specific GF(p).  The Chebyshev family needs cos(j*pi/d), which exists in GF(p)
once p = 1 (mod 2d), as (z^j + z^-j)/2 for a primitive 2d-th root z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Sequence

from .errors import (CharacteristicTooSmall, InvalidLevel, NodeVerificationFailed,
                     NotNodal, StabilizationFailure)
from .field import PrimeField, root_of_unity
from .koszul import DEFAULT_POLICY, Dim, combine, milnor_dim, socle_degree
from .linalg import PrimePolicy, SparseMatrix, consensus_rank, dense_rational_rank, kernel_basis, rank
from .poly import Poly, chebyshev_poly, graded_monomials, homogenize


def normalize_point(point: Sequence, field: PrimeField | None):
    """Scale so the first nonzero coordinate is 1."""
    if field is None:
        pt = [Fraction(x) for x in point]
        lead = next((x for x in pt if x), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        return tuple(x / lead for x in pt)
    pt = [field.reduce(Fraction(x) if isinstance(x, str) else x) for x in point]
    lead = next((x for x in pt if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    inv = field.inv(lead)
    return tuple(x * inv % field.p for x in pt)


@dataclass(frozen=True)
class NodeCertificate:
    point: tuple
    chart: int
    gradient_vanishes: bool
    hessian_rank: int
    n: int

    def __bool__(self):
        return self.gradient_vanishes and self.hessian_rank == self.n


def _eval(g: Poly, pt, field):
    from .poly import evaluate
    return evaluate(g, pt, field)


def verify_node(f: Poly, point: Sequence, field: PrimeField | None = None) -> NodeCertificate:
    """Ordinary double point test: all partials vanish and the affine Hessian is nondegenerate.

    The affine chart is that of the largest-index nonzero coordinate.
    """
    n, d = f.nvars - 1, f.degree
    if field is not None and field.p <= 2 * d:
        raise CharacteristicTooSmall(f"p = {field.p} must exceed 2d = {2 * d}")
    pt = normalize_point(point, field)
    chart = max(i for i, x in enumerate(pt) if x)
    if field is None:
        pt = tuple(x / pt[chart] for x in pt)
    else:
        inv = field.inv(pt[chart])
        pt = tuple(x * inv % field.p for x in pt)
    grads = [f.derivative(i) for i in range(n + 1)]
    vanish = all(_eval(g, pt, field) == 0 for g in grads)
    others = [i for i in range(n + 1) if i != chart]
    hess = [[_eval(grads[a].derivative(b), pt, field) for b in others] for a in others]
    if field is None:
        hr = dense_rational_rank(hess)
    else:
        hr = rank(SparseMatrix.from_dense(hess, field.p), field).rank
    return NodeCertificate(normalize_point(pt, field), chart, vanish, hr, n)


@dataclass(frozen=True)
class NodeSet:
    """Node points, normalized, with the field they live in (None = rationals).

    ``construction`` records how to rebuild the set over another prime
    (``("chebyshev", n, d, level)``), so consensus can visit several primes.
    """

    nvars: int
    points: tuple
    field: PrimeField | None = None
    construction: tuple | None = None
    certified: bool = False

    def __len__(self):
        return len(self.points)

    def at(self, field: PrimeField) -> "NodeSet":
        if self.field is not None and self.field.p == field.p:
            return self
        if self.construction and self.construction[0] == "chebyshev":
            _, n, d, c = self.construction
            return chebyshev_node_set(n, d, c, field)
        if self.field is None:
            return NodeSet(self.nvars, tuple(normalize_point([field.reduce(x) for x in pt], field)
                                             for pt in self.points), field, None, self.certified)
        raise ValueError(f"nodes live in GF({self.field.p}), cannot move to GF({field.p})")

    def policy(self, base: PrimePolicy) -> PrimePolicy | list:
        """Primes at which computations involving these nodes may run."""
        if self.construction and self.construction[0] == "chebyshev":
            return base.with_congruence(2 * self.construction[2])
        if self.field is not None:
            return [self.field]
        return base

    def to_json(self) -> dict:
        pts = [[str(x) for x in pt] for pt in self.points]
        if self.field is None:
            return {"rational": True, "points": pts}
        out = {"field": {"prime": self.field.p}, "points": pts}
        if self.construction and self.construction[0] == "chebyshev":
            _, n, d, c = self.construction
            out["construction"] = {"family": "chebyshev", "n": n, "d": d, "level": c}
        return out

    @classmethod
    def from_json(cls, obj) -> "NodeSet":
        if isinstance(obj, str):
            obj = json.loads(obj)
        pts = obj["points"]
        nvars = len(pts[0]) if pts else int(obj.get("nvars", 0))
        if obj.get("rational"):
            return cls(nvars, tuple(normalize_point([Fraction(x) for x in pt], None) for pt in pts))
        F = PrimeField(int(obj["field"]["prime"]))
        points = tuple(normalize_point([int(x) for x in pt], F) for pt in pts)
        con = obj.get("construction")
        if con and con.get("family") == "chebyshev":
            con = ("chebyshev", int(con["n"]), int(con["d"]), int(con["level"]))
            expected = chebyshev_node_set(con[1], con[2], con[3], F, verify=False)
            if sorted(points) != sorted(expected.points):
                raise ValueError("points do not match the recorded Chebyshev construction")
        else:
            con = None
        return cls(nvars, points, F, con)

    def verified(self, f: Poly) -> "NodeSet":
        """Check every point is a node of ``f`` and the points are distinct."""
        if len(set(self.points)) != len(self.points):
            raise NodeVerificationFailed("repeated node")
        for pt in self.points:
            if not verify_node(f, pt, self.field):
                raise NodeVerificationFailed(f"{pt} is not a node")
        return NodeSet(self.nvars, self.points, self.field, self.construction, True)


def empty_nodes(nvars: int) -> NodeSet:
    return NodeSet(nvars, (), None, None, True)


# --- Chebyshev family --------------------------------------------------------

def chebyshev_levels(n: int, d: int) -> dict:
    """Admissible critical levels of T_d(y_1)+...+T_d(y_n) mapped to node counts."""
    evens, odds = (d - 1) // 2, d // 2  # j in 1..d-1 with T_d(cos(j pi/d)) = +1 / -1
    return {2 * a - n: comb(n, a) * evens ** a * odds ** (n - a) for a in range(n + 1)}


def default_chebyshev_level(n: int, d: int) -> int:
    """Level with the most nodes; ties go to smaller |c|, then smaller c."""
    counts = chebyshev_levels(n, d)
    return min(counts, key=lambda c: (-counts[c], abs(c), c))


def chebyshev_hypersurface(n: int, d: int, level: int | None = None) -> Poly:
    """Homogenization of T_d(y_1) + ... + T_d(y_n) - level, with x_0 as the new variable."""
    if n < 2 or d < 3:
        raise ValueError("need n >= 2 and d >= 3")
    if level is None:
        level = default_chebyshev_level(n, d)
    if level not in chebyshev_levels(n, d):
        raise InvalidLevel(f"{level} is not a sum of {n} values +-1")
    T = homogenize(chebyshev_poly(d), d, 0)  # binary form in (x_0, y)
    coeffs: dict = {}
    for i in range(1, n + 1):
        for (a, b), c in T.coeffs.items():
            e = [0] * (n + 1)
            e[0], e[i] = a, b
            coeffs[tuple(e)] = coeffs.get(tuple(e), 0) + c
    e0 = (d,) + (0,) * n
    coeffs[e0] = coeffs.get(e0, 0) - level
    return Poly(n + 1, coeffs)


def chebyshev_cosines(d: int, field: PrimeField | None) -> list:
    """[cos(j pi/d) for j = 0..d] in the field (rationals only for d <= 3)."""
    if field is None:
        table = {1: [1, -1], 2: [1, 0, -1], 3: [1, Fraction(1, 2), Fraction(-1, 2), -1]}
        if d not in table:
            raise ValueError(f"cos(pi/{d}) is irrational; pass a prime field")
        return [Fraction(x) for x in table[d]]
    z = root_of_unity(field, 2 * d)
    half = field.inv(2)
    return [(pow(z, j, field.p) + pow(z, 2 * d - j, field.p)) * half % field.p for j in range(d + 1)]


@lru_cache(maxsize=64)
def chebyshev_node_set(n: int, d: int, level: int | None, field: PrimeField | None,
                       verify: bool = True) -> NodeSet:
    if level is None:
        level = default_chebyshev_level(n, d)
    if level not in chebyshev_levels(n, d):
        raise InvalidLevel(f"{level} is not a sum of {n} values +-1")
    cos = chebyshev_cosines(d, field)
    pts = []
    for js in product(range(1, d), repeat=n):
        if sum((-1) ** j for j in js) == level:
            pts.append(normalize_point([1] + [cos[j] for j in js], field))
    pts.sort()
    assert len(pts) == chebyshev_levels(n, d)[level]
    nodes = NodeSet(n + 1, tuple(pts), field, ("chebyshev", n, d, level))
    if verify:
        nodes = nodes.verified(chebyshev_hypersurface(n, d, level))
    return nodes


# --- Tjurina number ------------------------------------------------------------

def tjurina_number(f: Poly, policy: PrimePolicy | None = None, nodes: NodeSet | None = None) -> Dim:
    """Stable tail value of dim M(f)_k at k = T+1, T+2, T+3."""
    n, d = f.nvars - 1, f.degree
    T = socle_degree(n, d)
    vals = [milnor_dim(f, k, policy) for k in (T + 1, T + 2, T + 3)]
    if len({int(v) for v in vals}) != 1:
        raise StabilizationFailure(f"tail of M(f) not stable: {[int(v) for v in vals]}")
    tau = combine(int(vals[0]), vals)
    if nodes is not None and len(nodes) != tau:
        raise NotNodal(f"{len(nodes)} nodes supplied but tau = {int(tau)}")
    return tau


# --- evaluation conditions -----------------------------------------------------

def _falling(e: int, a: int) -> int:
    out = 1
    for t in range(a):
        out *= e - t
    return out


def _multi_indices(nv: int, top: int):
    for k in range(top + 1):
        yield from graded_monomials(nv, k).monomials


def vanishing_conditions(nodes: NodeSet, order: int, k: int, field: PrimeField | None = None) -> SparseMatrix:
    """Rows: partial derivatives of order < ``order`` at each node (affine chart of
    the largest nonzero coordinate); columns: degree-``k`` monomials.

    Entries are exact rationals for rational nodes and ``field`` None, residues otherwise.
    """
    if field is not None:
        if field.p <= k:
            raise CharacteristicTooSmall(f"p = {field.p} must exceed k = {k}")
        nodes = nodes.at(field)
    elif nodes.field is not None:
        field = nodes.field
    monos = graded_monomials(nodes.nvars, k).monomials
    n1 = nodes.nvars
    cols = [dict() for _ in monos]
    r = 0
    for pt in nodes.points:
        chart = max(i for i, x in enumerate(pt) if x)
        if field is None:
            pt = tuple(Fraction(x, pt[chart]) for x in pt)
        else:
            inv = field.inv(pt[chart])
            pt = tuple(x * inv % field.p for x in pt)
        others = [i for i in range(n1) if i != chart]
        for alpha in _multi_indices(n1 - 1, order - 1):
            for ci, e in enumerate(monos):
                coef, ok = 1, True
                val = 1
                for a, i in zip(alpha, others):
                    if e[i] < a:
                        ok = False
                        break
                    coef *= _falling(e[i], a)
                    if e[i] > a:
                        if field is None:
                            val *= pt[i] ** (e[i] - a)
                        else:
                            val = val * pow(pt[i], e[i] - a, field.p) % field.p
                if not ok or coef == 0:
                    continue
                v = coef * val if field is None else coef * val % field.p
                if v:
                    cols[ci][r] = v
            r += 1
    return SparseMatrix.from_columns(r, cols)


def _node_rank(nodes: NodeSet, build, policy: PrimePolicy, label) -> Dim:
    """Consensus rank of a node-dependent matrix ``build(field_or_None)``."""
    if nodes.field is None and nodes.construction is None:
        res = consensus_rank(build(None), policy, label=label)
    else:
        res = consensus_rank(lambda F: build(F), nodes.policy(policy), label=label)
    return Dim(res.rank, res.agreement, res.primes)


def defect(nodes: NodeSet, m: int, policy: PrimePolicy | None = None) -> Dim:
    """|N| minus the number of conditions N imposes on degree-``m`` forms."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    policy = policy or DEFAULT_POLICY
    if not nodes.points:
        return Dim(0)
    r = _node_rank(nodes, lambda F: vanishing_conditions(nodes, 1, m, F), policy, ("defect", m))
    return combine(len(nodes) - r, (r,))


def symbolic_power_dim(nodes: NodeSet, i: int, k: int, policy: PrimePolicy | None = None) -> Dim:
    """dim of the degree-``k`` forms vanishing to order >= ``i`` at every node."""
    if i < 1 or k < 0:
        raise ValueError("need i >= 1 and k >= 0")
    policy = policy or DEFAULT_POLICY
    size = comb(k + nodes.nvars - 1, nodes.nvars - 1)
    if not nodes.points:
        return Dim(size)
    r = _node_rank(nodes, lambda F: vanishing_conditions(nodes, i, k, F), policy, ("sympow", i, k))
    return combine(size - r, (r,))


def symbolic_power_basis(nodes: NodeSet, i: int, k: int, field: PrimeField) -> list[dict]:
    """Basis of I^(i)_k over ``field`` as sparse {monomial index: coefficient} vectors."""
    size = comb(k + nodes.nvars - 1, nodes.nvars - 1)
    if not nodes.points or i < 1:
        return [{j: 1} for j in range(size)]
    cond = vanishing_conditions(nodes, i, k, field).mod(field)
    return [{j: v for j, v in enumerate(vec) if v} for vec in kernel_basis(cond, field)]
