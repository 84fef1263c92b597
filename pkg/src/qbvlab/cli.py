"""Command-line entry point: ``qbvlab {psi,verify,feyn} ...``.

Exit codes: 0 success, 1 a verification failed or the two sides differ,
2 usage error, 3 a differential does not square to zero.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import psi
from .linalg import cohomology_dims, euler_characteristic, verify_d_squared

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_D2 = 0, 1, 2, 3
DEFAULT_SEED = 20240


class UsageError(Exception):
    pass


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    if args.emit:
        Path(args.emit).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text)


# -- psi ---------------------------------------------------------------------

def cmd_psi(args) -> int:
    if (args.tau is None) == (args.pn is None):
        raise UsageError("give exactly one of --tau and --pn")
    if args.tau is not None:
        if any(x < 0 for x in args.tau) or sum(args.tau) < 3:
            raise UsageError("--tau needs non-negative counts with at least three markings")
        val = psi.tau_bracket(args.tau)
        _emit(args, {"tau": args.tau, "value": psi._frac_str(val)}, psi._frac_str(val))
        return EXIT_OK
    if args.pn < 3:
        raise UsageError("--pn needs n >= 3")
    p = psi.p_polynomial(args.pn)
    payload = {"n": args.pn, "terms": p.to_json()["terms"]}
    _emit(args, payload, p.render())
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _axioms_for_arity(job):
    from .qbv import verify_homotopy_relations
    arity, max_arity, max_vdeg, max_upow = job
    return verify_homotopy_relations(max_arity, max_vdeg, max_upow, arities=(arity,))


def cmd_verify(args) -> int:
    what = args.what
    ok = True
    lines = []
    payload = {"check": what}
    if what == "axioms":
        if min(args.max_arity, args.max_upow) < 1 or args.max_vdeg < 0:
            raise UsageError("bounds must be positive")
        jobs = [(a, args.max_arity, args.max_vdeg, args.max_upow) for a in (1, 2, 3, 4, 5)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_axioms_for_arity, jobs))
        else:
            reports = [_axioms_for_arity(j) for j in jobs]
        for rep in reports:
            lines += rep.lines()
            for ar, bad in rep.failures.items():
                for elems, res in bad:
                    lines.append(f"  counterexample arity {ar}: {elems!r} -> {res!r}")
            ok = ok and rep.passed
        payload["checked"] = {str(a): r.checked[a] for a, r in zip((1, 2, 3, 4, 5), reports)}
    elif what == "f":
        from .fmorph import verify_f_range
        if args.max_arity < 3:
            raise UsageError("--max-arity must be >= 3")
        res = verify_f_range(args.max_arity)
        for n, r in res.items():
            lines.append(f"arity {n}: c {r['c']}  E {r['E']}  weight {r['weight']}")
            ok = ok and all(r.values())
        payload["arities"] = {str(n): r for n, r in res.items()}
    elif what == "recursion":
        if args.max_n < 3 or args.max_abc < 0:
            raise UsageError("--max-n must be >= 3")
        res = psi.verify_recursions(args.max_n, args.max_abc)
        for name, (checked, failed) in res.items():
            lines.append(f"{name}: {checked} checked, {failed} failed")
            ok = ok and failed == 0
        payload["results"] = {k: list(v) for k, v in res.items()}
    elif what == "phie":
        from .feyn.phi import verify_phiE_truncated
        if args.N < 1:
            raise UsageError("--N must be >= 1")
        rep = verify_phiE_truncated(args.N, args.leg_normalization)
        for n in sorted(rep.strata):
            lines.append(f"stratum {n}: dim H {rep.strata[n]}  represented {rep.represented[n]}  "
                         f"cone kernel {rep.cone_kernels[n]}")
        lines.append(f"legs iso {rep.legs_iso}  d^2=0 {rep.d_squared}")
        ok = rep.passed
        payload["strata"] = {str(k): v for k, v in rep.strata.items()}
    lines.append("PASS" if ok else "FAIL")
    payload["passed"] = ok
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


# -- feyn --------------------------------------------------------------------

def _check_gnw(args, need_weight=True):
    if args.g < 0 or args.n < 0 or 2 * args.g + args.n < 3:
        raise UsageError("need 2g + n >= 3")
    if need_weight and args.weight not in (0, 2):
        raise UsageError("--weight must be 0 or 2")


def _build(side, g, n, W, model):
    from .feyn.complexes import build_afeyn_qbv, build_feyn_bv, top_weight
    from .feyn.graphs import cached_graphs
    graphs = cached_graphs(g, n)
    if side == "feyn_bv":
        return build_feyn_bv(g, n, W, graphs=graphs)
    return build_afeyn_qbv(g, n, top_weight(g, n) - W, graphs=graphs, model=model)


def _dims_job(job):
    side, g, n, W, model = job
    cx = _build(side, g, n, W, model)
    return cx, verify_d_squared(cx)


def _both(args):
    jobs = [(s, args.g, args.n, args.weight, args.model) for s in ("feyn_bv", "afeyn_qbv")]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            return list(pool.map(_dims_job, jobs))
    return [_dims_job(j) for j in jobs]


def cmd_feyn(args) -> int:
    from .feyn.complexes import top_weight
    if args.what == "graphs":
        _check_gnw(args, need_weight=False)
        from .feyn.graphs import cached_graphs, graphs_to_text
        graphs = cached_graphs(args.g, args.n)
        text = graphs_to_text(graphs) if graphs else ""
        if args.emit:
            Path(args.emit).write_text(text)
        print(text, end="")
        return EXIT_OK
    _check_gnw(args)
    g, n, W = args.g, args.n, args.weight
    top = top_weight(g, n)
    if args.what == "dims":
        cx, d2 = _dims_job((args.side, g, n, W, args.model))
        if not d2:
            print("d^2 != 0", file=sys.stderr)
            return EXIT_D2
        h = cohomology_dims(cx, args.rank)
        wt = W if args.side == "feyn_bv" else top - W
        payload = {"g": g, "n": n, "W": wt, "side": args.side,
                   "dims_by_degree": {str(d): v for d, v in sorted(h.items())},
                   "euler": euler_characteristic(h)}
        text = "\n".join(f"H^{d}: {v}" for d, v in sorted(h.items())) or "H = 0"
        _emit(args, payload, text)
        return EXIT_OK
    (src, d2s), (tgt, d2t) = _both(args)
    if not (d2s and d2t):
        print("d^2 != 0", file=sys.stderr)
        return EXIT_D2
    if args.what == "compare":
        from .feyn.phi import compare_cohomology
        cmp_ = compare_cohomology(g, n, W, source=src, target=tgt)
        payload = {"g": g, "n": n, "W": W,
                   "source": {str(k): v for k, v in sorted(cmp_.source.items())},
                   "target": {str(k): v for k, v in sorted(cmp_.target.items())},
                   "equal": cmp_.equal}
        _emit(args, payload, "EQUAL" if cmp_.equal else "DIFFERENT\n" + cmp_.render())
        return EXIT_OK if cmp_.equal else EXIT_FAIL
    from .feyn.phi import verify_phi
    rep = verify_phi(g, n, W, args.leg_normalization, source=src, target=tgt)
    payload = {"g": g, "n": n, "W": W, "chain_map": rep.chain_map, "weight": rep.weight,
               "quasi_iso": rep.quasi_iso, "passed": rep.passed}
    text = f"chain map {rep.chain_map}\nweight {rep.weight}\nquasi-iso {rep.quasi_iso}\n" + (
        "PASS" if rep.passed else "FAIL")
    _emit(args, payload, text)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--emit", help="also write JSON output to this file")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="qbvlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("psi", parents=[common], help="intersection numbers and p_n")
    ps.add_argument("--tau", type=int, nargs="+", metavar="I_K",
                    help="multi-index counts (i_0, i_1, ...) of <tau^i>_0")
    ps.add_argument("--pn", type=int, metavar="N", help="print the polynomial p_N")
    ps.set_defaults(func=cmd_psi)

    vp = sub.add_parser("verify", parents=[common], help="identity checks")
    vp.add_argument("what", choices=("axioms", "f", "recursion", "phie"))
    vp.add_argument("--max-arity", type=int, default=None)
    vp.add_argument("--max-vdeg", type=int, default=3)
    vp.add_argument("--max-upow", type=int, default=4)
    vp.add_argument("--max-n", type=int, default=8)
    vp.add_argument("--max-abc", type=int, default=4)
    vp.add_argument("--N", type=int, default=6)
    vp.add_argument("--leg-normalization", choices=("factorial", "literal"), default="factorial")
    vp.set_defaults(func=cmd_verify)

    fp = sub.add_parser("feyn", parents=[common], help="graph complexes")
    fp.add_argument("what", choices=("dims", "compare", "graphs", "phi"))
    fp.add_argument("--g", type=int, required=True)
    fp.add_argument("--n", type=int, required=True)
    fp.add_argument("--weight", type=int, default=0, help="weight W of the BV side")
    fp.add_argument("--side", choices=("feyn_bv", "afeyn_qbv"), default="feyn_bv")
    fp.add_argument("--model", choices=("reduced", "full"), default="reduced",
                    help="target model: single-u edges, or all u-strings with v-power <= W/2")
    fp.add_argument("--rank", choices=("exact", "modp", "checked"), default="exact")
    fp.add_argument("--leg-normalization", choices=("factorial", "literal"), default="factorial")
    fp.set_defaults(func=cmd_feyn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    random.seed(args.seed)
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "verify" and args.max_arity is None:
        args.max_arity = 8 if args.what == "axioms" else 7
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
