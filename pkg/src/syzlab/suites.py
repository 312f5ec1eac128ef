"""Verification suites run by ``syzlab verify``.

Each suite takes a degree range and a prime policy and returns a list of
check records ``{"check", "params", "expected", "observed", "pass", "consensus"}``.
Work is split into one task per (suite, d) so the CLI can fan it out.
"""

from __future__ import annotations

from .catalog import fermat, one_node_job
from .invariants import (SMOOTH, HypersurfaceJob, coincidence_threshold, minimal_syzygy_degree,
                         theorem_bounds, verify_vanishing_and_sharpness)
from .koszul import cohomology_dim, milnor_dim, smooth_milnor_dim, socle_degree
from .linalg import PrimePolicy
from .nodal import (chebyshev_hypersurface, chebyshev_node_set, default_chebyshev_level, defect)

SUITES = ("thmA", "thmB", "ex45", "rel42", "defect-equiv", "smooth-oracle")
DEFAULT_RANGES = {
    "thmA": None, "thmB": (3, 10), "ex45": (3, 12), "rel42": (3, 10),
    "defect-equiv": None, "smooth-oracle": (3, 6),
}
ONE_NODE_EVEN = ((2, 3), (2, 4), (4, 3))
ONE_NODE_ALL = ((2, 3), (2, 4), (3, 3), (4, 3))


def _record(check, params, expected, observed, ok, consensus=True):
    return {"check": check, "params": params, "expected": expected, "observed": observed,
            "pass": bool(ok), "consensus": bool(consensus)}


def _value(v):
    return str(v) if v is SMOOTH else int(v)


def _chebyshev_job(d: int, policy: PrimePolicy, with_nodes=True) -> HypersurfaceJob:
    level = default_chebyshev_level(3, d)
    f = chebyshev_hypersurface(3, d, level)
    nodes = None
    if with_nodes:
        F = policy.with_congruence(2 * d).primes[0]
        nodes = chebyshev_node_set(3, d, level, F)
    return HypersurfaceJob(f, nodes, policy, name=f"C(3,{d}) level {level}")


def _vanishing_record(job: HypersurfaceJob, require_sharp: bool):
    v = verify_vanishing_and_sharpness(job)
    ok = v.passed and (v.sharp or not require_sharp)
    return _record(f"thm{v.theorem}-vanishing", {"job": job.name, "d": job.d, "bound": v.bound},
                   {"zero_through": v.bound, **({"first_nonzero": v.bound + 1} if require_sharp else {})},
                   {"checked": {str(m): int(x) for m, x in v.checked.items()},
                    "first_nonzero": v.first_nonzero, "hypothesis": v.hypothesis},
                   ok, v.agreement)


def task_thmA(n: int, d: int, policy: PrimePolicy):
    f, nodes = one_node_job(n, d)
    return [_vanishing_record(HypersurfaceJob(f, nodes, policy, name=f"one-node n={n} d={d}"), False)]


def task_thmB(d: int, policy: PrimePolicy):
    return [_vanishing_record(_chebyshev_job(d, policy), True)]


def task_ex45(d: int, policy: PrimePolicy):
    job = _chebyshev_job(d, policy, with_nodes=False)
    ct = coincidence_threshold(job.f, policy)
    expected = 3 * d - d // 2 - 5
    bounds = theorem_bounds(3, d)
    agreement = True
    return [
        _record("ex45-ct", {"job": job.name, "d": d}, expected, _value(ct), ct == expected, agreement),
        _record("corA-bound", {"job": job.name, "d": d}, {">=": bounds.corA}, _value(ct),
                ct is not SMOOTH and ct >= bounds.corA, agreement),
    ]


def _rel42(f, name, policy):
    ct = coincidence_threshold(f, policy)
    mdr = minimal_syzygy_degree(f, policy)
    d = f.degree
    ok = ct is not SMOOTH and mdr is not SMOOTH and ct == mdr + d - 2
    return _record("rel42", {"job": name, "d": d}, "ct = mdr + d - 2",
                   {"ct": _value(ct), "mdr": _value(mdr), "d": d}, ok)


def task_rel42(d: int, policy: PrimePolicy):
    job = _chebyshev_job(d, policy, with_nodes=False)
    return [_rel42(job.f, job.name, policy)]


def task_rel42_one_node(n: int, d: int, policy: PrimePolicy):
    f, _ = one_node_job(n, d)
    return [_rel42(f, f"one-node n={n} d={d}", policy)]


def _defect_equiv(f, nodes, name, policy):
    n, d = f.nvars - 1, f.degree
    T = socle_degree(n, d)
    ct = coincidence_threshold(f, policy)
    table = {k: int(defect(nodes, k, policy)) for k in range(T + 1)}
    ok = all((table[k] == 0) == (k >= T - ct) for k in table)
    return _record("defect-equiv", {"job": name, "d": d, "T": T, "ct": _value(ct)},
                   {"defect_zero_from": T - ct}, {"defects": {str(k): v for k, v in table.items()}}, ok)


def task_defect_cheb(d: int, policy: PrimePolicy):
    job = _chebyshev_job(d, policy)
    return [_defect_equiv(job.f, job.nodes, job.name, policy)]


def task_defect_one_node(n: int, d: int, policy: PrimePolicy):
    f, nodes = one_node_job(n, d)
    return [_defect_equiv(f, nodes, f"one-node n={n} d={d}", policy)]


def task_smooth(n: int, d: int, policy: PrimePolicy):
    f = fermat(n, d)
    T = socle_degree(n, d)
    name = f"Fermat n={n} d={d}"
    params = {"job": name, "d": d}
    dims = {k: milnor_dim(f, k, policy) for k in range(T + 1)}
    ok_m = all(dims[k] == smooth_milnor_dim(n, d, k) for k in dims)
    bad = [(j, m) for j in range(n + 1) for m in range((n + 1) * (d - 1) + 1)
           if cohomology_dim(f, j, m, policy) != 0]
    ct, mdr = coincidence_threshold(f, policy), minimal_syzygy_degree(f, policy)
    return [
        _record("smooth-milnor", params, "closed form through T",
                {str(k): int(v) for k, v in dims.items()}, ok_m, all(v.agreement for v in dims.values())),
        _record("smooth-exact", params, "H^j = 0 for j <= n", {"nonzero": bad}, not bad),
        _record("smooth-sentinels", params, {"ct": "Smooth", "mdr": "Smooth"},
                {"ct": _value(ct), "mdr": _value(mdr)}, ct is SMOOTH and mdr is SMOOTH),
    ]


def plan(suite: str, drange: tuple | None) -> list:
    """Task list ``[(function name, args)]`` for a suite."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    lo, hi = drange or DEFAULT_RANGES[suite] or (0, -1)
    if suite == "thmA":
        return [("task_thmA", (n, d)) for n, d in ONE_NODE_EVEN]
    if suite == "thmB":
        return [("task_thmB", (d,)) for d in range(max(lo, 3), hi + 1)]
    if suite == "ex45":
        return [("task_ex45", (d,)) for d in range(max(lo, 3), hi + 1)]
    if suite == "rel42":
        return ([("task_rel42", (d,)) for d in range(max(lo, 3), hi + 1)]
                + [("task_rel42_one_node", nd) for nd in ONE_NODE_ALL])
    if suite == "defect-equiv":
        ds = range(max(lo, 3), hi + 1) if drange else (4,)
        return ([("task_defect_cheb", (d,)) for d in ds]
                + [("task_defect_one_node", (3, 3))])
    if suite == "smooth-oracle":
        return [("task_smooth", (n, d)) for n in (2, 3) for d in range(max(lo, 3), hi + 1)]
    raise AssertionError(suite)


def run_task(name: str, args: tuple, policy_args: tuple):
    policy = PrimePolicy(*policy_args)
    return globals()[name](*args, policy)
