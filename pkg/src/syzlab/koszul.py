"""Graded Koszul complex of the partial derivatives, Milnor algebra dimensions,
and the smooth reference Hilbert function.

Grading: ``Omega^j_m`` has basis ``x^a dx_I`` with ``|a| + |I| = m``; the
differential ``w -> df ^ w`` raises the total degree by ``d``.  So
``H^j(K*(f))_m = ker(Omega^j_m -> Omega^{j+1}_{m+d}) / im(Omega^{j-1}_{m-d})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

from .linalg import PrimePolicy, SparseMatrix, consensus_rank, echelon_leading
from .poly import Poly, graded_monomials, jacobian

DEFAULT_POLICY = PrimePolicy()


class Dim(int):
    """A dimension computed by multi-prime consensus.

    Behaves as an ``int``; ``agreement`` is False if the primes never agreed
    and ``primes`` lists the primes consulted.
    """

    def __new__(cls, value: int, agreement: bool = True, primes: tuple = ()):
        obj = super().__new__(cls, value)
        obj.agreement = agreement
        obj.primes = tuple(primes)
        return obj

    def __repr__(self):
        flag = "" if self.agreement else ", agreement=False"
        return f"Dim({int(self)}{flag})"

    def __str__(self):
        return str(int(self))


def combine(value: int, parts: Iterable) -> Dim:
    """Wrap ``value`` with the consensus metadata of the pieces it came from."""
    agreement, primes = True, []
    for part in parts:
        agreement &= getattr(part, "agreement", True)
        primes.extend(q for q in getattr(part, "primes", ()) if q not in primes)
    return Dim(value, agreement, tuple(primes))


_RANK_CACHE: dict = {}


def _policy_key(policy: PrimePolicy):
    return (policy.count, policy.seed, policy.congruence, policy.max_retries)


def _rank(matrix: SparseMatrix, policy: PrimePolicy, label) -> Dim:
    """Consensus rank, memoized on ``label`` (which must identify the matrix)."""
    if matrix.ncols == 0 or matrix.nrows == 0:
        return Dim(0)
    key = (label, _policy_key(policy))
    hit = _RANK_CACHE.get(key)
    if hit is None:
        res = consensus_rank(matrix, policy, label=label)
        hit = _RANK_CACHE[key] = Dim(res.rank, res.agreement, res.primes)
    return hit


def computed_differentials() -> list:
    """``(f, j, m)`` for every differential whose rank has been computed so far."""
    return [key[0][1:] for key in _RANK_CACHE if key[0][0] == "koszul"]


def clear_caches():
    _RANK_CACHE.clear()
    differential_matrix.cache_clear()
    jacobian_matrix.cache_clear()


# --- slices and differentials ----------------------------------------------

@dataclass(frozen=True)
class KoszulSlice:
    n: int
    j: int
    m: int
    basis: tuple  # (monomial, index set) pairs
    index: dict

    def __len__(self):
        return len(self.basis)


@lru_cache(maxsize=256)
def koszul_slice(n: int, j: int, m: int) -> KoszulSlice:
    if not 0 <= j <= n + 1:
        raise ValueError(f"form degree {j} outside 0..{n + 1}")
    basis = []
    if m >= j:
        monos = graded_monomials(n + 1, m - j).monomials
        for I in combinations(range(n + 1), j):
            basis.extend((a, I) for a in monos)
    basis = tuple(basis)
    assert len(basis) == (comb(n + 1, j) * comb(m - j + n, n) if m >= j else 0)
    return KoszulSlice(n, j, m, basis, {b: i for i, b in enumerate(basis)})


def wedge_sign(i: int, I: tuple) -> int:
    """Sign of ``dx_i ^ dx_I`` relative to the sorted index set."""
    return -1 if sum(1 for t in I if t < i) % 2 else 1


@dataclass(frozen=True)
class DifferentialMatrix:
    source: KoszulSlice
    target: KoszulSlice
    matrix: SparseMatrix


@lru_cache(maxsize=256)
def differential_matrix(f: Poly, j: int, m: int) -> DifferentialMatrix:
    """Matrix of ``df ^ -`` from ``Omega^j_m`` to ``Omega^{j+1}_{m+d}``, integer entries."""
    n, d = f.nvars - 1, f.degree
    src = koszul_slice(n, j, m)
    if j > n:
        tgt = KoszulSlice(n, j + 1, m + d, (), {})
        return DifferentialMatrix(src, tgt, SparseMatrix(0, len(src), tuple({} for _ in src.basis)))
    tgt = koszul_slice(n, j + 1, m + d)
    grads = [g.terms for g in jacobian(f)]
    cols = []
    tindex = tgt.index
    for a, I in src.basis:
        col: dict = {}
        for i in range(n + 1):
            if i in I:
                continue
            s = wedge_sign(i, I)
            J = tuple(sorted(I + (i,)))
            for e, c in grads[i]:
                row = tindex[(tuple(x + y for x, y in zip(a, e)), J)]
                col[row] = col.get(row, 0) + s * c
        cols.append(col)
    return DifferentialMatrix(src, tgt, SparseMatrix.from_columns(len(tgt), cols))


def cohomology_dim(f: Poly, j: int, m: int, policy: PrimePolicy | None = None) -> Dim:
    """dim H^j(K*(f))_m, from one kernel and one image rank."""
    n, d = f.nvars - 1, f.degree
    if not 0 <= j <= n + 1:
        raise ValueError(f"form degree {j} outside 0..{n + 1}")
    policy = policy or DEFAULT_POLICY
    size = len(koszul_slice(n, j, m))
    if size == 0:
        return Dim(0)
    out = _rank(differential_matrix(f, j, m).matrix, policy, ("koszul", f, j, m)) if j <= n else Dim(0)
    inc = (_rank(differential_matrix(f, j - 1, m - d).matrix, policy, ("koszul", f, j - 1, m - d))
           if j >= 1 and m - d >= j - 1 else Dim(0))
    return combine(size - out - inc, (out, inc))


# --- Milnor algebra ----------------------------------------------------------

@lru_cache(maxsize=256)
def jacobian_matrix(f: Poly, k: int) -> SparseMatrix:
    """Columns ``x^u f_i`` for ``|u| = k-d+1``, rows the degree-``k`` monomials."""
    nv, d = f.nvars, f.degree
    rows = graded_monomials(nv, k)
    src = graded_monomials(nv, k - d + 1)
    cols = []
    for g in jacobian(f):
        terms = g.terms
        for u in src:
            col = {}
            for e, c in terms:
                r = rows.index[tuple(x + y for x, y in zip(u, e))]
                col[r] = col.get(r, 0) + c
            cols.append(col)
    return SparseMatrix.from_columns(len(rows), cols)


def milnor_dim(f: Poly, k: int, policy: PrimePolicy | None = None) -> Dim:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    policy = policy or DEFAULT_POLICY
    size = len(graded_monomials(f.nvars, k))
    if k < f.degree - 1:
        return Dim(size)
    r = _rank(jacobian_matrix(f, k), policy, ("milnor", f, k))
    return combine(size - r, (r,))


def milnor_monomial_basis(f: Poly, k: int, policy: PrimePolicy | None = None) -> list:
    """Standard monomials of degree ``k``: not leading monomials of ``(J_f)_k``.

    Computed at the first prime of the policy and checked against the
    consensus dimension.
    """
    policy = policy or DEFAULT_POLICY
    rows = graded_monomials(f.nvars, k)
    if k < f.degree - 1:
        return list(rows.monomials)
    F = policy.primes[0]
    leads = set(echelon_leading(jacobian_matrix(f, k).mod(F).cols, F.p))
    std = [mono for i, mono in enumerate(rows.monomials) if i not in leads]
    expected = milnor_dim(f, k, policy)
    if len(std) != expected:
        raise ArithmeticError(f"prime {F.p} gives {len(std)} standard monomials, consensus {expected}")
    return std


@lru_cache(maxsize=256)
def _smooth_series(n: int, d: int) -> tuple:
    series = [1]
    for _ in range(n + 1):
        nxt = [0] * (len(series) + d - 2)
        for i, a in enumerate(series):
            for t in range(d - 1):
                nxt[i + t] += a
        series = nxt
    return tuple(series)


def smooth_milnor_dim(n: int, d: int, k: int) -> int:
    """Coefficient of t^k in (1 + t + ... + t^(d-2))^(n+1)."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if k < 0:
        return 0
    series = _smooth_series(n, d)
    return series[k] if k < len(series) else 0


def socle_degree(n: int, d: int) -> int:
    return (n + 1) * (d - 2)


def e1_page_dims(f: Poly, k: int, window: Iterable, policy: PrimePolicy | None = None) -> dict:
    """``E_1^{p,q}(f, k) = H^{p+q}(K*(f))_{qd+k}`` over the ``(p, q)`` window."""
    n, d = f.nvars - 1, f.degree
    if not 1 <= k <= d:
        raise ValueError(f"k must be in 1..{d}")
    out = {}
    for p, q in sorted(window):
        if q < 0:
            raise ValueError("q must be nonnegative")
        j, m = p + q, q * d + k
        if j < 0 or j > n + 1:
            out[(p, q)] = Dim(0)
        elif j == n + 1:
            out[(p, q)] = milnor_dim(f, m - n - 1, policy) if m >= n + 1 else Dim(0)
        else:
            out[(p, q)] = cohomology_dim(f, j, m, policy)
    return out
