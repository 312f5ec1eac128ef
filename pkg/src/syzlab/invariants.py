"""Named invariants of nodal hypersurfaces and checks of the vanishing bounds.

``T = (n+1)(d-2)`` is the top degree of the Milnor algebra of a smooth
hypersurface of degree ``d`` in P^n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .errors import (DegreeTooSmall, EigenvalueOutOfRange, IndexOutOfRange, InconsistentSmooth,
                     InternalError, NotNodal, RouteMismatch, SearchExhausted, SmoothInput)
from .koszul import (DEFAULT_POLICY, Dim, cohomology_dim, combine, milnor_dim,
                     smooth_milnor_dim, socle_degree)
from .linalg import PrimePolicy, SparseMatrix, consensus_rank
from .nodal import (NodeSet, defect, empty_nodes, symbolic_power_basis, symbolic_power_dim,
                    tjurina_number, vanishing_conditions)
from .poly import Poly, graded_monomials, jacobian


class Sentinel(enum.Enum):
    SMOOTH = "Smooth"

    def __str__(self):
        return self.value


SMOOTH = Sentinel.SMOOTH


@dataclass
class HypersurfaceJob:
    f: Poly
    nodes: NodeSet | None = None
    policy: PrimePolicy = dc_field(default_factory=PrimePolicy)
    name: str = ""
    force: bool = False

    def __post_init__(self):
        if not self.f.is_homogeneous() or self.f.degree < 1:
            raise ValueError("f must be homogeneous of positive degree")

    @property
    def n(self) -> int:
        return self.f.nvars - 1

    @property
    def d(self) -> int:
        return self.f.degree


def _require_degree(d: int):
    if d <= 2:
        raise DegreeTooSmall(f"degree {d} <= 2")


# --- ct and mdr ------------------------------------------------------------------

def coincidence_threshold(f: Poly, policy: PrimePolicy | None = None):
    """Largest q with dim M(f)_k = dim M(h)_k for all k <= q (h smooth); SMOOTH if never broken."""
    n, d = f.nvars - 1, f.degree
    _require_degree(d)
    T = socle_degree(n, d)
    seen = []
    for q in range(T + 2):
        seen.append(milnor_dim(f, q, policy))
        if seen[-1] != smooth_milnor_dim(n, d, q):
            return combine(q - 1, seen)
    if tjurina_number(f, policy) != 0:
        raise InconsistentSmooth("no Hilbert function mismatch through T+1 but tau > 0")
    return SMOOTH


def minimal_syzygy_degree(f: Poly, policy: PrimePolicy | None = None):
    """Smallest q with H^n(K*(f))_{q+n} != 0; SMOOTH if there is none."""
    n, d = f.nvars - 1, f.degree
    _require_degree(d)
    seen = []
    for q in range(socle_degree(n, d) - d + 4):
        seen.append(cohomology_dim(f, n, q + n, policy))
        if seen[-1] > 0:
            return combine(q, seen)
    if tjurina_number(f, policy) != 0:
        raise SearchExhausted("no nontrivial syzygy up to T-d+3 but tau > 0")
    return SMOOTH


# --- bounds ------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremBounds:
    n: int
    d: int
    thmA: int
    thmB: int | None
    corA: int | None
    T: int
    k0: int

    @property
    def vanishing_bound(self) -> int:
        """Largest m with H^n(K*(f))_m guaranteed to vanish."""
        return self.thmB if self.thmB is not None else self.thmA


def theorem_bounds(n: int, d: int) -> TheoremBounds:
    if n < 2:
        raise ValueError("need n >= 2")
    _require_degree(d)
    n1, half = n // 2, d // 2
    if n % 2:
        thmA = n1 * d
        thmB = (n1 + 1) * d - half - 1
        corA = (n1 + 2) * d - half - n - 2
    else:
        thmA, thmB, corA = n1 * d - 1, None, None
    return TheoremBounds(n, d, thmA, thmB, corA, socle_degree(n, d), d - half - 1)


@dataclass
class Verdict:
    n: int
    theorem: str
    bound: int
    checked: dict  # m -> dim H^n(K*(f))_m for m <= bound
    first_nonzero: int | None
    hypothesis: str
    passed: bool
    sharp: bool
    agreement: bool

    @property
    def mdr(self):
        return None if self.first_nonzero is None else self.first_nonzero - self.n

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem, "bound": self.bound,
            "checked": {str(m): int(v) for m, v in sorted(self.checked.items())},
            "first_nonzero": self.first_nonzero, "sharp": self.sharp,
            "hypothesis": self.hypothesis, "verdict": "PASS" if self.passed else "FAIL",
            "consensus": self.agreement,
        }


def nodal_hypothesis(job: HypersurfaceJob) -> str:
    """How the nodal hypothesis was established; raises NotNodal if it was not."""
    if job.nodes is not None and job.nodes.certified:
        return "VERIFIED-NODES"
    try:
        tjurina_number(job.f, job.policy)
    except InternalError:
        if job.force:
            return "UNVERIFIED-HYPOTHESIS"
        raise NotNodal("Milnor algebra tail does not stabilize")
    return "TAU-STABLE"


def verify_vanishing_and_sharpness(job: HypersurfaceJob, search_past: bool = True) -> Verdict:
    """Check H^n(K*(f))_m = 0 up to the applicable bound and locate the first nonzero degree."""
    n, d, f = job.n, job.d, job.f
    _require_degree(d)
    bounds = theorem_bounds(n, d)
    hypothesis = nodal_hypothesis(job) if not job.force else "UNVERIFIED-HYPOTHESIS"
    bound = bounds.vanishing_bound
    checked = {m: cohomology_dim(f, n, m, job.policy) for m in range(n, bound + 1)}
    passed = all(v == 0 for v in checked.values())
    agreement = all(v.agreement for v in checked.values())
    first = next((m for m, v in checked.items() if v), None)
    if first is None and search_past:
        for m in range(bound + 1, bounds.T - d + 4 + n):
            v = cohomology_dim(f, n, m, job.policy)
            agreement &= v.agreement
            if v:
                first = m
                break
    return Verdict(n, "B" if bounds.thmB is not None else "A", bound, checked, first, hypothesis,
                   passed, first == bound + 1, agreement)


# --- Hodge-filtration pieces ----------------------------------------------------------

def grf_complement_dim(f: Poly, nodes: NodeSet | None, p: int, policy: PrimePolicy | None = None) -> Dim:
    """dim (I^(i+1) / I^(i) J_f)_K with q = n-p, i = q - [n/2], K = (q+1)d - n - 1."""
    n, d = f.nvars - 1, f.degree
    m = n // 2
    q = n - p
    if q <= m or p < 0:
        raise IndexOutOfRange(f"need n - p > [n/2]; got p = {p} for n = {n}")
    policy = policy or DEFAULT_POLICY
    nodes = nodes if nodes is not None else empty_nodes(f.nvars)
    i, K = q - m, (q + 1) * d - n - 1
    numerator = symbolic_power_dim(nodes, i + 1, K, policy)
    grads = jacobian(f)
    rows = graded_monomials(f.nvars, K).index
    src = graded_monomials(f.nvars, K - d + 1).monomials

    def products(F):
        cols = []
        gterms = [g.reduce(F).terms for g in grads]
        for u in symbolic_power_basis(nodes, i, K - d + 1, F):
            for terms in gterms:
                col: dict = {}
                for ui, uc in u.items():
                    a = src[ui]
                    for e, c in terms:
                        r = rows[tuple(x + y for x, y in zip(a, e))]
                        col[r] = (col.get(r, 0) + uc * c) % F.p
                cols.append(col)
        prod_matrix = SparseMatrix.from_columns(len(rows), cols, F.p)
        if nodes.points:
            cond = vanishing_conditions(nodes, i + 1, K, F).mod(F)
            # every u * f_j must vanish to order i+1 at the nodes
            if not cond.matmul(prod_matrix, F.p).is_zero():
                raise InternalError("I^(i) J_f not contained in I^(i+1)")
        return prod_matrix

    if nodes.points:
        res = consensus_rank(products, nodes.policy(policy), label=("grf", p))
        r = Dim(res.rank, res.agreement, res.primes)
    else:
        r = _integer_products_rank(f, K, policy)
    return combine(numerator - r, (numerator, r))


def _integer_products_rank(f: Poly, K: int, policy) -> Dim:
    # empty node set: I^(i) = S, the products span (J_f)_K
    from .koszul import jacobian_matrix
    res = consensus_rank(jacobian_matrix(f, K), policy, label=("grf-products", K))
    return Dim(res.rank, res.agreement, res.primes)


@dataclass(frozen=True)
class BPrime:
    holds: bool
    e: int
    defect: int | None
    vacuous: bool

    def __bool__(self):
        return self.holds


def condition_b_prime(f: Poly, nodes: NodeSet, p: int, policy: PrimePolicy | None = None) -> BPrime:
    """defect S_e(N) = 0 with e = [n/2](d-1) - p; vacuously true (flagged) when e < 0."""
    n, d = f.nvars - 1, f.degree
    if n - p <= n // 2 or p < 0:
        raise IndexOutOfRange(f"need n - p > [n/2]; got p = {p} for n = {n}")
    e = (n // 2) * (d - 1) - p
    if e < 0:
        return BPrime(True, e, None, True)
    dft = defect(nodes, e, policy)
    return BPrime(dft == 0, e, int(dft), False)


@dataclass(frozen=True)
class Applicability:
    applies: bool
    reason: str

    def __bool__(self):
        return self.applies


def thmC_applicable(n: int, d: int, p: int) -> Applicability:
    _require_degree(d)
    if n - p <= n // 2 or p < 0:
        raise IndexOutOfRange(f"need n - p > [n/2]; got p = {p} for n = {n}")
    if n % 2 == 0:
        return Applicability(True, "n even: always holds")
    limit = n - n // 2 - d // 2
    if p <= limit:
        return Applicability(True, f"n odd: p = {p} <= n - [n/2] - [d/2] = {limit}")
    return Applicability(False, f"n odd: p = {p} > n - [n/2] - [d/2] = {limit}")


def eigenspace_grf_dim(n: int, d: int, k: int) -> int:
    """dim Gr_F^{n_1+1} of the exp(-2 pi i k/d)-eigenspace, for 0 < k <= d - [d/2] - 1."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    _require_degree(d)
    k0 = d - d // 2 - 1
    if not 1 <= k <= k0:
        raise EigenvalueOutOfRange(f"k = {k} outside 1..{k0}")
    n1 = n // 2
    return smooth_milnor_dim(n, d, n1 * d + k - n - 1)


@dataclass(frozen=True)
class Sernesi:
    value: int
    milnor_d: int
    smooth_d: int
    milnor_T_minus_d: int
    tau: int
    agreement: bool
    primes: tuple = ()

    @property
    def negative(self) -> bool:
        return self.value < 0


def sernesi_deformation_dim(f: Poly, policy: PrimePolicy | None = None) -> Sernesi:
    """dim M(f)_d - dim M(h)_d + dim M(f)_{T-d} - tau."""
    n, d = f.nvars - 1, f.degree
    T = socle_degree(n, d)
    if T - d < 0:
        raise ValueError(f"T - d = {T - d} < 0")
    a = milnor_dim(f, d, policy)
    b = smooth_milnor_dim(n, d, d)
    c = milnor_dim(f, T - d, policy)
    tau = tjurina_number(f, policy)
    meta = combine(0, (a, c, tau))
    return Sernesi(a - b + c - tau, int(a), b, int(c), int(tau), meta.agreement, meta.primes)


def defect_via_ct(f: Poly, k: int, ct=None, nodes: NodeSet | None = None,
                  policy: PrimePolicy | None = None) -> bool:
    """Whether defect S_k(N) vanishes, read off as k >= T - ct; cross-checked when nodes are given."""
    n, d = f.nvars - 1, f.degree
    if ct is None:
        ct = coincidence_threshold(f, policy)
    if ct is SMOOTH:
        raise SmoothInput("ct is undefined for smooth input")
    answer = k >= socle_degree(n, d) - ct
    if nodes is not None:
        direct = defect(nodes, k, policy) == 0
        if direct != answer:
            raise RouteMismatch(f"defect route says {direct}, ct route says {answer} at k = {k}")
    return answer
