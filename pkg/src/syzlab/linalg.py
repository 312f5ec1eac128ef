"""Exact sparse rank and kernels over GF(p), multi-prime consensus, and a
fraction-free rational oracle.

Matrices are stored column-major: ``cols[j]`` is a ``{row: value}`` dict.
Elimination is Markowitz-style: at each step pick the active column with the
fewest live entries and, among its rows, the sparsest one.
"""

from __future__ import annotations

import heapq
import time
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import TooLarge
from .field import PrimeField, sample_verification_primes

DENSE_ORACLE_LIMIT = 500


@dataclass(frozen=True)
class SparseMatrix:
    nrows: int
    ncols: int
    cols: tuple  # tuple of {row: value} dicts, values nonzero

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable, p: int | None = None) -> "SparseMatrix":
        cols = []
        for col in columns:
            if p is None:
                c = {r: v for r, v in col.items() if v}
            else:
                c = {}
                for r, v in col.items():
                    v %= p
                    if v:
                        c[r] = v
            if any(not 0 <= r < nrows for r in c):
                raise IndexError("row index out of range")
            cols.append(c)
        return cls(nrows, len(cols), tuple(cols))

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable, p: int | None = None) -> "SparseMatrix":
        cols = [dict() for _ in range(ncols)]
        for r, c, v in triplets:
            if r in cols[c]:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            cols[c][r] = v
        return cls.from_columns(nrows, cols, p)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], p: int | None = None) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_triplets(nrows, ncols, ((i, j, v) for i, row in enumerate(rows)
                                                for j, v in enumerate(row) if v), p)

    def triplets(self):
        for j, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, j, col[r]

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def rows(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][j] = v
        return out

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.triplets():
            out[r][c] = v
        return out

    def mod(self, field: PrimeField) -> "SparseMatrix":
        return SparseMatrix.from_columns(self.nrows, (
            {r: field.reduce(v) for r, v in col.items()} for col in self.cols), field.p)

    def matmul(self, other: "SparseMatrix", p: int) -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, v in col.items():
                for r, w in self.cols[k].items():
                    acc[r] = (acc.get(r, 0) + v * w) % p
            out.append(acc)
        return SparseMatrix.from_columns(self.nrows, out, p)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def to_matrix_market(self) -> str:
        lines = ["%%MatrixMarket matrix coordinate integer general",
                 f"{self.nrows} {self.ncols} {self.nnz}"]
        lines += [f"{r + 1} {c + 1} {v}" for r, c, v in self.triplets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_matrix_market(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
        nrows, ncols, _ = map(int, lines[0].split())
        trip = []
        for ln in lines[1:]:
            r, c, v = ln.split()
            trip.append((int(r) - 1, int(c) - 1, int(v)))
        return cls.from_triplets(nrows, ncols, trip)


@dataclass(frozen=True)
class RankResult:
    rank: int
    prime: int
    pivots: int
    fill: int
    elapsed: float = dc_field(compare=False)


def _eliminate(vectors: Sequence[dict], p: int, keep: bool = False):
    """Markowitz elimination on a list of sparse vectors.

    Returns ``(pivots, fill)`` where ``pivots`` is a list of
    ``(coordinate, vector)`` in elimination order (vectors only if ``keep``)
    and ``fill`` counts entries created during elimination.  Later pivot
    vectors never touch earlier pivot coordinates.
    """
    rows = {i: dict(v) for i, v in enumerate(vectors) if v}
    colrows: dict = {}
    for i, r in rows.items():
        for c in r:
            colrows.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in colrows.items()]
    heapq.heapify(heap)
    pivots = []
    fill = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        s = colrows.get(c)
        if s is None:
            continue
        if not s:
            del colrows[c]
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), c))
            continue
        pr = min(s, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(pr)
        for cc in prow:
            colrows[cc].discard(pr)
        inv = pow(prow[c], p - 2, p)
        for i in sorted(colrows.pop(c)):
            row = rows[i]
            fac = row.pop(c) * inv % p
            for cc, v in prow.items():
                if cc == c:
                    continue
                old = row.get(cc)
                if old is None:
                    row[cc] = -fac * v % p
                    colrows[cc].add(i)
                    fill += 1
                else:
                    nv = (old - fac * v) % p
                    if nv:
                        row[cc] = nv
                    else:
                        del row[cc]
                        colrows[cc].discard(i)
            if not row:
                del rows[i]
        for cc in prow:
            if cc != c and cc in colrows:
                heapq.heappush(heap, (len(colrows[cc]), cc))
        pivots.append((c, prow if keep else None))
    return pivots, fill


def rank(m: SparseMatrix, field: PrimeField) -> RankResult:
    t = time.perf_counter()
    pivots, fill = _eliminate(m.cols, field.p)
    r = len(pivots)
    assert r <= min(m.nrows, m.ncols)
    return RankResult(r, field.p, r, fill, time.perf_counter() - t)


def kernel_basis(m: SparseMatrix, field: PrimeField) -> list[list[int]]:
    """Basis of ``{x : m x = 0}``, one vector per non-pivot column.

    Free column ``j`` yields the vector with ``x_j = 1``, other free
    coordinates 0.  Vectors are listed by increasing free column.
    """
    p = field.p
    pivots, _ = _eliminate(m.rows(), p, keep=True)
    pivot_cols = {c for c, _ in pivots}
    free = [j for j in range(m.ncols) if j not in pivot_cols]
    basis = []
    for j in free:
        x = {j: 1}
        for c, row in reversed(pivots):
            s = 0
            for cc, v in row.items():
                if cc != c:
                    xv = x.get(cc)
                    if xv:
                        s += v * xv
            s %= p
            if s:
                x[c] = -s * pow(row[c], p - 2, p) % p
        vec = [0] * m.ncols
        for k, v in x.items():
            vec[k] = v
        basis.append(vec)
    return basis


def echelon_leading(vectors: Iterable[dict], p: int) -> list[int]:
    """Leading coordinates (smallest index) of a row-echelon form of the span.

    The set is independent of elimination order; used to read off standard
    monomials when coordinates are listed in monomial order.
    """
    pivots: dict = {}
    for v in vectors:
        v = {k: x % p for k, x in v.items() if x % p}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(v[lead], p - 2, p)
                pivots[lead] = {k: x * inv % p for k, x in v.items()}
                break
            fac = v[lead]
            for k, x in piv.items():
                nv = (v.get(k, 0) - fac * x) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return sorted(pivots)


# --- characteristic-zero oracle --------------------------------------------

def dense_rational_rank(m) -> int:
    """Rank over Q by fraction-free elimination with content removal.

    Accepts a :class:`SparseMatrix` with integer/Fraction entries or a list of
    rows.  Guarded to at most ``DENSE_ORACLE_LIMIT`` columns.
    """
    rows = m.to_dense() if isinstance(m, SparseMatrix) else [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    if ncols > DENSE_ORACLE_LIMIT:
        raise TooLarge(f"{ncols} columns exceeds oracle limit {DENSE_ORACLE_LIMIT}")
    if ncols == 0:
        return 0
    ints = []
    for r in rows:
        den = 1
        for v in r:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        ints.append([int(v * den) for v in r])
    rows = [r for r in ints if any(r)]
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][col]:
                if piv is None or abs(rows[i][col]) < abs(rows[piv][col]):
                    piv = i
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        prow = rows[rk]
        a = prow[col]
        for i in range(rk + 1, len(rows)):
            b = rows[i][col]
            if not b:
                continue
            g = gcd(a, b)
            ca, cb = a // g, b // g
            r = rows[i]
            new = [ca * x - cb * y for x, y in zip(r, prow)]
            cont = 0
            for x in new:
                if x:
                    cont = gcd(cont, x)
                    if cont == 1:
                        break
            if cont > 1:
                new = [x // cont for x in new]
            rows[i] = new
        rk += 1
        if rk == len(rows):
            break
    return rk


# --- multi-prime consensus -------------------------------------------------

@dataclass(frozen=True)
class ConsensusRank:
    rank: int
    primes: tuple
    ranks: tuple
    agreement: bool
    retries: int


@dataclass
class PrimePolicy:
    """Which primes to compute at, and where to find fresh ones."""

    count: int = 2
    seed: int = 0
    congruence: int | None = None
    max_retries: int = 4

    def __post_init__(self):
        self._primes = None

    @property
    def primes(self) -> list[PrimeField]:
        if self._primes is None:
            self._primes = sample_verification_primes(self.count, self.congruence, self.seed)
        return self._primes

    def fresh(self, k: int, exclude) -> list[PrimeField]:
        return sample_verification_primes(k, self.congruence, self.seed + 7919,
                                          exclude=[f.p for f in exclude])

    def with_congruence(self, congruence: int | None) -> "PrimePolicy":
        return PrimePolicy(self.count, self.seed, congruence, self.max_retries)


class MatrixLog:
    """Collects integer matrices passed through consensus for later oracle audits."""

    def __init__(self, max_cols: int = 400):
        self.max_cols = max_cols
        self.records: list = []

    def add(self, label, m: SparseMatrix | None, result: ConsensusRank):
        # m is None for matrices built per prime (no integer lift to audit)
        if m is None or m.ncols <= self.max_cols:
            self.records.append((label, m, result))


_LOGS: list[MatrixLog] = []


@contextmanager
def record_matrices(max_cols: int = 400):
    log = MatrixLog(max_cols)
    _LOGS.append(log)
    try:
        yield log
    finally:
        _LOGS.remove(log)


def consensus_rank(builder: Callable[[PrimeField], SparseMatrix] | SparseMatrix,
                   primes: Sequence[PrimeField] | PrimePolicy, label=None) -> ConsensusRank:
    """Rank agreed on by several primes.

    ``builder`` maps a field to the reduction of one fixed matrix; passing an
    integer :class:`SparseMatrix` reduces it at each prime.  Every call is
    visible to :func:`record_matrices`, with the integer matrix when there is
    one.  On disagreement, up to
    ``max_retries`` fresh primes are tried until as many primes as were
    requested agree on the largest rank seen; ``agreement`` is False if that
    never happens (the largest rank is still returned).
    """
    policy = primes if isinstance(primes, PrimePolicy) else None
    fields = list(policy.primes if policy else primes)
    if len(fields) < 1:
        raise ValueError("need at least one prime")
    integer = builder if isinstance(builder, SparseMatrix) else None
    build = (lambda F: integer.mod(F)) if integer is not None else builder
    ranks = [rank(build(F), F).rank for F in fields]
    needed = len(fields)
    retries = 0
    max_retries = policy.max_retries if policy else 4
    # rank mod p never exceeds the characteristic-zero rank: primes below the max are bad
    while ranks.count(max(ranks)) < needed and retries < max_retries:
        if policy is not None:
            (F,) = policy.fresh(1, fields)
        else:
            (F,) = sample_verification_primes(1, None, 104729 + retries,
                                              exclude=[f.p for f in fields])
        fields.append(F)
        ranks.append(rank(build(F), F).rank)
        retries += 1
    top = max(ranks)
    agreement = ranks.count(top) >= needed
    result = ConsensusRank(top, tuple(F.p for F in fields), tuple(ranks), agreement, retries)
    for log in _LOGS:
        log.add(label, integer, result)
    return result
