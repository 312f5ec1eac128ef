"""``syzlab`` command line.

Exit codes: 0 success, 1 verification FAIL, 2 invalid input,
3 prime consensus failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import suites
from .errors import InputError, InternalError, NodeVerificationFailed, NotHomogeneous
from .invariants import (SMOOTH, coincidence_threshold, condition_b_prime, eigenspace_grf_dim,
                         grf_complement_dim, minimal_syzygy_degree, sernesi_deformation_dim,
                         thmC_applicable)
from .koszul import (Dim, cohomology_dim, e1_page_dims, milnor_dim, milnor_monomial_basis,
                     smooth_milnor_dim, socle_degree)
from .linalg import PrimePolicy
from .nodal import (NodeSet, chebyshev_hypersurface, chebyshev_node_set, default_chebyshev_level,
                    defect, symbolic_power_dim, tjurina_number)
from .poly import Poly, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONSENSUS = 0, 1, 2, 3


class UsageError(InputError):
    pass


def parse_polynomial(text: str, nvars: int | None = None) -> Poly:
    """Text or canonical JSON to a homogeneous :class:`Poly`."""
    stripped = text.strip()
    if stripped.startswith("{"):
        f = Poly.from_json(stripped)
    else:
        f = parse_poly(stripped, nvars)
    if not f:
        raise NotHomogeneous("zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneous(f"terms of degrees {sorted({sum(e) for e in f.coeffs})}")
    return f


def parse_range(text: str) -> tuple:
    if ".." in text:
        a, b = text.split("..", 1)
        return int(a), int(b)
    v = int(text)
    return v, v


class Report:
    """Single writer for command output; JSON or CSV, deterministic."""

    def __init__(self, command: str, digest: str, policy: PrimePolicy):
        self.doc = {"tool": "syzlab", "command": command, "input_digest": digest,
                    "seed": policy.seed, "num_primes": policy.count,
                    "primes": [F.p for F in policy.primes], "values": [], "verdicts": []}
        self.consensus_ok = True
        self.failed = False

    def meta(self, **kw):
        self.doc.update(kw)

    def value(self, invariant: str, degree, value, extra=None):
        agreement = getattr(value, "agreement", True)
        primes = list(getattr(value, "primes", ()))
        self.consensus_ok &= agreement
        if value is SMOOTH:
            value = str(value)
        elif isinstance(value, int) and not isinstance(value, bool):
            value = int(value)
        entry = {"invariant": invariant, "degree": degree, "value": value,
                 "consensus": agreement, "prime_count": len(primes), "primes": primes}
        if extra:
            entry.update(extra)
        self.doc["values"].append(entry)

    def verdict(self, record: dict):
        self.consensus_ok &= record.get("consensus", True)
        self.failed |= not record["pass"]
        self.doc["verdicts"].append(record)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["invariant", "degree", "value", "consensus", "prime_count"])
        for v in self.doc["values"]:
            val = v["value"] if not isinstance(v["value"], (list, dict)) else json.dumps(v["value"], sort_keys=True)
            w.writerow([v["invariant"], "" if v["degree"] is None else v["degree"], val,
                        str(v["consensus"]).lower(), v["prime_count"]])
        for r in self.doc["verdicts"]:
            w.writerow([f"verdict:{r['check']}:{r['params'].get('job', '')}", r["params"].get("d", ""),
                        "PASS" if r["pass"] else "FAIL", str(r["consensus"]).lower(), self.doc["num_primes"]])
        return buf.getvalue()

    def exit_code(self) -> int:
        if self.failed:
            return EXIT_FAIL
        if not self.consensus_ok:
            return EXIT_CONSENSUS
        return EXIT_OK


# --- argument handling ----------------------------------------------------------

def _common(p: argparse.ArgumentParser, poly=True):
    if poly:
        p.add_argument("-f", "--poly", metavar="FILE", required=True,
                       help="polynomial file (text or canonical JSON)")
        p.add_argument("--nvars", type=int, help="number of variables if not inferable from the text")
    p.add_argument("--num-primes", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env SYZLAB_THREADS)")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings (breaks byte-determinism)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="syzlab", description="Graded invariants of nodal hypersurfaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("milnor", help="dim M(f)_k (and standard monomials with --basis)")
    _common(p)
    p.add_argument("-k", "--degree", help="degree or range a..b (default 0..T+1)")
    p.add_argument("--basis", action="store_true")

    p = sub.add_parser("koszul", help="dim H^j(K*(f))_m")
    _common(p)
    p.add_argument("-j", "--form-degree", type=int, help="default: n")
    p.add_argument("-k", "--degree", required=True, help="total degree m or range")

    for name, hlp in (("ct", "coincidence threshold"), ("mdr", "minimal syzygy degree"),
                      ("sernesi", "locally trivial deformation dimension")):
        p = sub.add_parser(name, help=hlp)
        _common(p)
        p.add_argument("--nodes", metavar="FILE")

    p = sub.add_parser("defect", help="defect of the node set in degree k")
    _common(p)
    p.add_argument("--nodes", metavar="FILE", required=True)
    p.add_argument("-k", "--degree", help="degree or range (default 0..T)")

    p = sub.add_parser("sympow", help="dim I^(i)_k")
    _common(p)
    p.add_argument("--nodes", metavar="FILE", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("-k", "--degree", required=True)

    p = sub.add_parser("grf", help="dim Gr_F^p H^n(U) via symbolic powers")
    _common(p)
    p.add_argument("--nodes", metavar="FILE", help="node file (omit for smooth f)")
    p.add_argument("--p", "--hodge-index", dest="hodge", type=int, required=True)

    p = sub.add_parser("eigengrf", help="Gr_F dimension of a Milnor fiber eigenspace")
    _common(p, poly=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-k", "--degree", required=True, help="eigenvalue index k (or range)")

    p = sub.add_parser("e1", help="E_1 page dimensions")
    _common(p)
    p.add_argument("-k", "--degree", type=int, required=True, help="eigenvalue index 1..d")
    p.add_argument("--qmax", type=int, default=None, help="largest q (default n+1)")

    p = sub.add_parser("chebyshev", help="emit C(n,d) as .poly plus nodes.json")
    _common(p, poly=False)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p, poly=False)
    p.add_argument("--suite", choices=suites.SUITES, required=True)
    p.add_argument("--d", dest="drange", help="degree range a..b")
    p.add_argument("--extended", action="store_true", help="ex45 up to d = 20")
    return ap


def _policy(args) -> PrimePolicy:
    if args.num_primes < 1:
        raise UsageError("--num-primes must be positive")
    return PrimePolicy(count=args.num_primes, seed=args.seed)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _load_poly(args):
    raw = _read(args.poly)
    return parse_polynomial(raw.decode(), args.nvars), raw


def _load_nodes(args, f, policy):
    if not getattr(args, "nodes", None):
        return None, b""
    raw = _read(args.nodes)
    nodes = NodeSet.from_json(raw.decode())
    if nodes.nvars != f.nvars:
        raise UsageError(f"nodes have {nodes.nvars} coordinates, f has {f.nvars} variables")
    try:
        return nodes.verified(f), raw
    except NodeVerificationFailed as exc:
        raise UsageError(f"node file: {exc}") from exc


def _degrees(text, default):
    if text is None:
        return default
    lo, hi = parse_range(text)
    if lo < 0 or hi < lo:
        raise UsageError(f"invalid degree range {text!r}")
    return range(lo, hi + 1)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get("SYZLAB_THREADS", "1")))


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return h.hexdigest()


def _job_meta(report, f, nodes=None):
    report.meta(polynomial=f.to_text(), nvars=f.nvars, degree=f.degree,
                T=socle_degree(f.nvars - 1, f.degree),
                nodes=None if nodes is None else len(nodes))


def cmd_milnor(args, policy):
    f, raw = _load_poly(args)
    rep = Report("milnor", _digest(raw), policy)
    _job_meta(rep, f)
    n, d = f.nvars - 1, f.degree
    for k in _degrees(args.degree, range(socle_degree(n, d) + 2)):
        extra = {"smooth": smooth_milnor_dim(n, d, k)} if d >= 2 else None
        if args.basis:
            extra = dict(extra or {}, basis=[list(m) for m in milnor_monomial_basis(f, k, policy)])
        rep.value("milnor_dim", k, milnor_dim(f, k, policy), extra)
    return rep


def cmd_koszul(args, policy):
    f, raw = _load_poly(args)
    rep = Report("koszul", _digest(raw), policy)
    _job_meta(rep, f)
    j = args.form_degree if args.form_degree is not None else f.nvars - 1
    if not 0 <= j <= f.nvars:
        raise UsageError(f"form degree {j} outside 0..{f.nvars}")
    for m in _degrees(args.degree, None):
        rep.value(f"H^{j}", m, cohomology_dim(f, j, m, policy))
    return rep


def cmd_ct(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    rep = Report("ct", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    rep.value("ct", None, coincidence_threshold(f, policy))
    return rep


def cmd_mdr(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    rep = Report("mdr", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    rep.value("mdr", None, minimal_syzygy_degree(f, policy))
    return rep


def cmd_sernesi(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    rep = Report("sernesi", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    s = sernesi_deformation_dim(f, policy)
    if nodes is not None:
        tjurina_number(f, policy, nodes)
    rep.value("sernesi", f.degree, Dim(s.value, s.agreement, s.primes),
              {"terms": {"milnor_d": s.milnor_d, "smooth_d": s.smooth_d,
                         "milnor_T_minus_d": s.milnor_T_minus_d, "tau": s.tau},
               "negative": s.negative})
    return rep


def cmd_defect(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    rep = Report("defect", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    for k in _degrees(args.degree, range(socle_degree(f.nvars - 1, f.degree) + 1)):
        rep.value("defect", k, defect(nodes, k, policy))
    return rep


def cmd_sympow(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    rep = Report("sympow", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    for k in _degrees(args.degree, None):
        rep.value(f"sympow_{args.order}", k, symbolic_power_dim(nodes, args.order, k, policy))
    return rep


def cmd_grf(args, policy):
    f, raw = _load_poly(args)
    nodes, nraw = _load_nodes(args, f, policy)
    rep = Report("grf", _digest(raw, nraw), policy)
    _job_meta(rep, f, nodes)
    n, d, p = f.nvars - 1, f.degree, args.hodge
    value = grf_complement_dim(f, nodes, p, policy)
    extra = {"q": n - p, "K": (n - p + 1) * d - n - 1}
    if nodes is not None and d > 2:
        b = condition_b_prime(f, nodes, p, policy)
        app = thmC_applicable(n, d, p)
        extra.update(b_prime={"holds": b.holds, "e": b.e, "defect": b.defect, "vacuous": b.vacuous},
                     thmC={"applies": app.applies, "reason": app.reason})
    rep.value("grf", p, value, extra)
    return rep


def cmd_eigengrf(args, policy):
    rep = Report("eigengrf", _digest(f"{args.n},{args.d},{args.degree}".encode()), policy)
    rep.meta(n=args.n, d=args.d)
    for k in _degrees(args.degree, None):
        rep.value("eigengrf", k, eigenspace_grf_dim(args.n, args.d, k))
    return rep


def cmd_e1(args, policy):
    f, raw = _load_poly(args)
    rep = Report("e1", _digest(raw), policy)
    _job_meta(rep, f)
    n = f.nvars - 1
    qmax = args.qmax if args.qmax is not None else n + 1
    window = [(j - q, q) for q in range(qmax + 1) for j in range(n + 2)]
    table = e1_page_dims(f, args.degree, window, policy)
    for (p, q), v in sorted(table.items()):
        rep.value(f"E1[{p},{q}]", q * f.degree + args.degree, v)
    return rep


def cmd_chebyshev(args, policy):
    level = args.level if args.level is not None else default_chebyshev_level(args.n, args.d)
    f = chebyshev_hypersurface(args.n, args.d, level)
    F = policy.with_congruence(2 * args.d).primes[0]
    nodes = chebyshev_node_set(args.n, args.d, level, F)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"cheb{args.n}{args.d}" if args.d < 10 else f"cheb{args.n}_{args.d}"
    (out / f"{stem}.poly").write_text(f.to_text() + "\n")
    (out / f"{stem}.nodes.json").write_text(json.dumps(nodes.to_json(), indent=2) + "\n")
    rep = Report("chebyshev", _digest(f.to_text().encode()), policy)
    _job_meta(rep, f, nodes)
    rep.meta(level=level, node_prime=F.p, files=[f"{stem}.poly", f"{stem}.nodes.json"])
    rep.value("nodes", None, len(nodes))
    return rep


def cmd_verify(args, policy):
    drange = parse_range(args.drange) if args.drange else None
    if args.extended and args.suite == "ex45" and drange is None:
        drange = (3, 20)
    tasks = suites.plan(args.suite, drange)
    rep = Report("verify", _digest(f"{args.suite}:{drange}".encode()), policy)
    rep.meta(suite=args.suite, degree_range=list(drange) if drange else None)
    pargs = (policy.count, policy.seed, policy.congruence, policy.max_retries)
    threads = _threads(args)
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(suites.run_task, [t[0] for t in tasks], [t[1] for t in tasks],
                                    [pargs] * len(tasks)))
    else:
        results = [suites.run_task(name, targs, pargs) for name, targs in tasks]
    for records in results:
        for r in records:
            rep.verdict(r)
    rep.meta(summary="PASS" if not rep.failed else "FAIL")
    return rep


COMMANDS = {
    "milnor": cmd_milnor, "koszul": cmd_koszul, "ct": cmd_ct, "mdr": cmd_mdr,
    "defect": cmd_defect, "sympow": cmd_sympow, "grf": cmd_grf, "eigengrf": cmd_eigengrf,
    "sernesi": cmd_sernesi, "e1": cmd_e1, "chebyshev": cmd_chebyshev, "verify": cmd_verify,
}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        policy = _policy(args)
        rep = COMMANDS[args.command](args, policy)
    except (InputError, ValueError) as exc:
        print(f"syzlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalError as exc:
        print(f"syzlab: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.timings:
        rep.meta(elapsed_seconds=round(time.perf_counter() - t0, 3))
    text = rep.render(args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code()


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
