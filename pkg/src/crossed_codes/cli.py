"""Command-line front end.

Every subcommand prints a report ``{"command", "parameters", "result",
"oracle_agreement"}``.  A brute-force cross-check that disagrees with the
closed form gives exit status 1; bad arguments give 2.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import prod
from pathlib import Path

import numpy as np

from . import verify
from .classify import (
    CyclicParams,
    alpha_matrix,
    classify_cyclic,
    congruence_classes,
    count_elab_complex,
    count_elab_finite_field,
    is_classical,
    is_semisimple_cyclic,
    normal_form,
    Bicharacter,
    wedderburn,
)
from .cocycles import CocycleTable, CoeffModule, standard_cocycle
from .cohomology import MAX_CLASS_ENUMERATION, compute_h2, h2_by_enumeration, orbits
from .crossring import (
    MAX_CODE_SPACE,
    CrossedRing,
    enumerate_codes,
    find_isometry,
    is_semisimple,
    verify_isometry,
)
from .errors import CrossedCodesError, TooLarge
from .ffield import FrobAction, make_tower, valid_ks
from .groups import GroupSpec, aut_eta

CONGRUENCE_WORK_BOUND = 20_000


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _flatten(prefix: str, x, lines: list[str]) -> None:
    if isinstance(x, dict):
        if not x:
            lines.append(f"{prefix}: {{}}")
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        if not x:
            lines.append(f"{prefix}: []")
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, lines)
    else:
        lines.append(f"{prefix}: {json.dumps(x)}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    lines: list[str] = []
    _flatten("", report, lines)
    return "\n".join(lines)


# -- shared argument helpers ---------------------------------------------------

def _cyclic_setup(args):
    k = args.k if args.k is not None else args.r
    act = FrobAction(args.n, k, args.r)
    tower = make_tower(args.q, args.r)
    return tower, GroupSpec.cyclic(args.n), act


def _cyclic_params(args) -> dict:
    return {"n": args.n, "q": args.q, "r": args.r, "k": args.k if args.k is not None else args.r}


def _ring_from_args(args) -> CrossedRing:
    tower, G, act = _cyclic_setup(args)
    coeff = CoeffModule.from_field(tower, act)
    f = standard_cocycle(args.n, coeff, args.beta)
    return CrossedRing(tower, G, act, f)


def _add_cyclic(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="order of the cyclic group")
    p.add_argument("--q", type=int, required=True, help="characteristic of the field")
    p.add_argument("--r", type=int, default=1, help="degree of the field over F_q")
    p.add_argument("--k", type=int, default=None,
                   help="sigma acts as Frobenius^k (default r, the trivial action)")


# -- subcommands ----------------------------------------------------------------

def cmd_classify_cyclic(args) -> tuple[dict, dict, bool | None]:
    params = CyclicParams(args.n, args.q, args.r, args.k if args.k is not None else args.r)
    cls = classify_cyclic(params)
    result = {
        "m": cls.m,
        "count": cls.count,
        "classes": cls.classes,
        "representatives": cls.representatives,
        "compatible_units": params.compatible_units,
        "semisimple": is_semisimple_cyclic(params),
        "classical": is_classical(params),
    }
    agreement = None
    if cls.m <= args.max_size:
        tower, G, act = _cyclic_setup(args)
        h2 = compute_h2(G, CoeffModule.from_field(tower, act))
        result["orbit_count"] = orbits(h2, aut_eta(G, act)).count
        agreement = result["orbit_count"] == cls.count and h2.order == cls.m
    return _cyclic_params(args), result, agreement


def cmd_classify_elab(args):
    p, s = args.p, args.s
    reps = []
    for i in range(s // 2 + 1):
        w = wedderburn(i, p, s)
        reps.append({**w.to_json(), "matrix": alpha_matrix(i, p, s).tolist()})
    result = {
        "i_values": list(range(s // 2 + 1)),
        "wedderburn": [[r["matrix_size"], r["copies"]] for r in reps],
        "count": count_elab_complex(s),
        "representatives": reps,
    }
    params = {"p": p, "s": s}
    checks = []
    alt = p ** (s * (s - 1) // 2)
    gl = prod(p**s - p**i for i in range(s))
    if alt * gl <= CONGRUENCE_WORK_BOUND:
        result["congruence_classes"] = len(congruence_classes(p, s))
        checks.append(result["congruence_classes"] == result["count"])
    if args.q is not None:
        params.update(q=args.q, r=args.r)
        result["finite_field_count"] = count_elab_finite_field(p, s, args.q, args.r)
        G = GroupSpec.elab(p, s)
        N = args.q**args.r - 1
        if G.order <= 12 and gl <= CONGRUENCE_WORK_BOUND:
            h2 = compute_h2(G, CoeffModule.trivial(N, s))
            if h2.order <= MAX_CLASS_ENUMERATION:
                result["orbit_count"] = orbits(h2, aut_eta(G)).count
                checks.append(result["orbit_count"] == result["finite_field_count"])
    return params, result, (all(checks) if checks else None)


def _h2_setup(args):
    if args.group == "cyclic":
        if args.n is None:
            raise UsageError("--n is required for a cyclic group")
        G = GroupSpec.cyclic(args.n)
        params = {"group": "cyclic", "n": args.n}
    else:
        if args.p is None or args.s is None:
            raise UsageError("--p and --s are required for an elementary abelian group")
        G = GroupSpec.elab(args.p, args.s)
        params = {"group": "elab", "p": args.p, "s": args.s}
    if args.N is not None:
        coeff, act = CoeffModule.trivial(args.N, G.s), None
        params["N"] = args.N
    elif args.q is not None:
        tower = make_tower(args.q, args.r)
        act = None
        if args.group == "cyclic" and args.k is not None:
            act = FrobAction(args.n, args.k, args.r)
        coeff = CoeffModule.from_field(tower, act, G.s)
        params.update(q=args.q, r=args.r, k=None if act is None else act.k)
    else:
        raise UsageError("give either --N (trivial action on Z/N) or --q/--r")
    return G, coeff, act, params


def cmd_h2(args):
    G, coeff, act, params = _h2_setup(args)
    h2 = compute_h2(G, coeff)
    result = {"invariant_factors": h2.invariant_factors, "order": h2.order}
    checks = []
    if h2.order <= min(args.max_size, MAX_CLASS_ENUMERATION):
        orb = orbits(h2, aut_eta(G, act))
        result["orbit_count"] = orb.count
        result["orbits"] = [[list(c) for c in o] for o in orb.classes]
    try:
        result["enumeration_invariant_factors"] = h2_by_enumeration(G, coeff)
        checks.append(result["enumeration_invariant_factors"] == h2.invariant_factors)
    except TooLarge:
        pass
    if G.kind == "cyclic":
        closed = compute_h2(G, coeff, method="closed")
        checks.append(closed.invariant_factors == h2.invariant_factors)
    return params, result, (all(checks) if checks else None)


def _load_cocycle(path: str) -> CocycleTable:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read cocycle file {path}: {exc}") from exc
    return CocycleTable.from_json(data)


def _infer_k(f: CocycleTable, q: int, r: int) -> FrobAction | None:
    G = f.group
    if G.kind != "cyclic":
        return None
    N = f.N
    for k in sorted(valid_ks(G.n, r), reverse=True):
        if N == 1 or pow(q, k, N) == f.coeff.multipliers[0] % N:
            return FrobAction(G.n, k, r)
    raise UsageError("the cocycle's action multiplier is not q^k for any valid k")


def cmd_isometric(args):
    tower = make_tower(args.q, args.r)
    if args.standard_beta is not None:
        if args.n is None:
            raise UsageError("--standard-beta needs --n")
        act = FrobAction(args.n, args.k if args.k is not None else args.r, args.r)
        coeff = CoeffModule.from_field(tower, act)
        f1, f2 = (standard_cocycle(args.n, coeff, b) for b in args.standard_beta)
        params = {"n": args.n, "q": args.q, "r": args.r, "k": act.k, "standard_beta": args.standard_beta}
    else:
        if len(args.cocycles) != 2:
            raise UsageError("give two cocycle files or --standard-beta E1 E2")
        f1, f2 = (_load_cocycle(p) for p in args.cocycles)
        act = _infer_k(f1, args.q, args.r)
        params = {"q": args.q, "r": args.r, "files": args.cocycles}
    R1 = CrossedRing(tower, f1.group, act, f1)
    R2 = CrossedRing(tower, f2.group, act, f2)
    w = find_isometry(R1, R2)
    result = {"isometric": w is not None}
    checks = []
    if w is not None:
        result.update(w.to_json())
        checks.append(verify_isometry(w, R1, R2))
    G = f1.group
    h2 = compute_h2(G, f1.coeff)
    if h2.order <= MAX_CLASS_ENUMERATION:
        orb = orbits(h2, aut_eta(G, act))
        same = orb.orbit_of(h2.class_coords(f1)) == orb.orbit_of(h2.class_coords(f2))
        checks.append(same == (w is not None))
    return params, result, (all(checks) if checks else None)


def cmd_semisimple(args):
    ring = _ring_from_args(args)
    diag = is_semisimple(ring, empirical=ring.size <= args.max_size, max_size=args.max_size)
    params = {**_cyclic_params(args), "beta": args.beta}
    result = {
        "closed_form": diag.closed_form,
        "classical": diag.classical,
        "kernel_order": ring.act.kernel_order,
        "empirical": diag.empirical,
        "uncomplemented": len(diag.uncomplemented),
    }
    return params, result, diag.agree


def cmd_codes(args):
    ring = _ring_from_args(args)
    sided = "left" if args.left else "two"
    codes = enumerate_codes(ring, sided=sided, max_size=args.max_size)
    params = {**_cyclic_params(args), "beta": args.beta, "sided": sided}
    result = {
        "ring": ring.to_json(),
        "semisimple": is_semisimple_cyclic(CyclicParams(args.n, args.q, args.r, ring.act.k)),
        "count": len(codes),
        "codes": [c.to_json(ring) for c in codes],
    }
    agreement = None
    if is_classical(CyclicParams(args.n, args.q, args.r, ring.act.k)) and sided == "two":
        agreement = len(codes) == 2
    return params, result, agreement


def cmd_wedderburn(args):
    w = wedderburn(args.i, args.p, args.s)
    result = w.to_json()
    agreement = None
    if args.p**args.s <= args.max_size:
        A = alpha_matrix(args.i, args.p, args.s)
        result["radical_size"] = verify.radical_size(A, args.p)
        nf = normal_form(Bicharacter(args.p, args.s, tuple(map(tuple, A.tolist()))))
        agreement = result["radical_size"] == w.copies and nf.i == args.i
    return {"p": args.p, "s": args.s, "i": args.i}, result, agreement


def cmd_verify_grid(args):
    grid = verify.CyclicGrid(tuple(args.qs), tuple(args.rs), tuple(range(1, args.max_n + 1)))
    elab_cases = [(p, s) for p in args.ps for s in range(1, args.max_s + 1)]
    field_cases = [(p, s, q, r) for p, s in elab_cases for q in args.qs for r in args.rs
                   if (q**r - 1) % p == 0 and q**r <= 9]
    wanted = args.only or list(verify.ALL_CHECKS)
    runners = {
        "h2": lambda: verify.check_h2_closed_form(grid),
        "orbits": lambda: verify.check_orbit_count(grid),
        "divisors": lambda: verify.check_divisor_count(grid),
        "small-m": lambda: verify.check_small_m(grid),
        "semisimple": lambda: verify.check_semisimplicity(grid, min(args.max_size, 2**12)),
        "classical": lambda: verify.check_classical_codes(grid, min(args.max_size, 2**12)),
        "isometry": lambda: verify.check_isometry_completeness(min(args.max_n, 6), 9, tuple(args.qs),
                                                                seed=args.seed),
        "normal-form": lambda: verify.check_normal_forms(tuple(args.ps), args.max_s, args.samples, args.seed),
        "congruence": lambda: verify.check_congruence_counts(elab_cases),
        "elab-orbits": lambda: verify.check_elab_field_orbits(field_cases),
        "associativity": lambda: verify.check_associativity(
            verify.CyclicGrid(tuple(args.qs), tuple(args.rs), tuple(range(1, min(args.max_n, 6) + 1))),
            seed=args.seed),
        "cohomologous": lambda: verify.check_cohomologous_equivalence(grid, seed=args.seed),
        "pullback": lambda: verify.check_pullback_law(grid),
        "norm": lambda: verify.check_norm_image(grid),
    }
    checks = []
    for name in wanted:
        start = time.perf_counter()
        c = runners[name]()
        if args.progress:
            print(f"{c.summary()} ({time.perf_counter() - start:.1f}s)", file=sys.stderr)
        checks.append(c)
    params = {"qs": args.qs, "rs": args.rs, "max_n": args.max_n, "ps": args.ps, "max_s": args.max_s,
              "samples": args.samples, "seed": args.seed, "checks": wanted}
    result = {"checks": [{"key": name, **c.to_json()} for name, c in zip(wanted, checks)]}
    return params, result, all(c.passed for c in checks)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-size", type=int, default=MAX_CODE_SPACE,
                        help="upper bound for exhaustive enumerations (default %(default)s)")

    parser = argparse.ArgumentParser(
        prog="crossed-codes",
        description="Crossed-product codes: cohomology, isometry classes, ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-cyclic", parents=[common], help="isometry classes for F_{q^r} * C_n")
    _add_cyclic(p)
    p.set_defaults(func=cmd_classify_cyclic)

    p = sub.add_parser("classify-elab", parents=[common], help="classes for (C_p)^s")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--q", type=int, default=None, help="also count classes over F_{q^r}")
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(func=cmd_classify_elab)

    p = sub.add_parser("h2", parents=[common], help="second cohomology and automorphism orbits")
    p.add_argument("--group", choices=("cyclic", "elab"), default="cyclic")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--N", type=int, help="coefficients Z/N with trivial action")
    p.add_argument("--q", type=int, help="coefficients F_{q^r}^*")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, help="cyclic action by Frobenius^k (default trivial)")
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("isometric", parents=[common], help="decide whether two crossed products are isometric")
    p.add_argument("cocycles", nargs="*", help="two cocycle JSON files")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--standard-beta", type=int, nargs=2, metavar=("E1", "E2"),
                   help="compare the standard cocycles with beta = x0^E1 and x0^E2")
    p.set_defaults(func=cmd_isometric)

    for name, func, helptext in (("semisimple", cmd_semisimple, "semisimplicity verdicts"),
                                 ("codes", cmd_codes, "enumerate ideal codes")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_cyclic(p)
        p.add_argument("--beta", type=int, default=0, help="standard cocycle with u_sigma^n = x0^beta")
        if name == "codes":
            p.add_argument("--left", action="store_true", help="left ideals instead of two-sided ideals")
        p.set_defaults(func=func)

    p = sub.add_parser("wedderburn", parents=[common], help="Wedderburn shape of the alpha_i algebra")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_wedderburn)

    p = sub.add_parser("verify-grid", parents=[common], help="run every formula-vs-oracle sweep")
    p.add_argument("--qs", type=int, nargs="+", default=[2, 3, 5])
    p.add_argument("--rs", type=int, nargs="+", default=[1, 2, 3, 4])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--ps", type=int, nargs="+", default=[2, 3])
    p.add_argument("--max-s", type=int, default=2)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="+", choices=list(verify.ALL_CHECKS))
    p.add_argument("--progress", action="store_true", help="print one summary line per check to stderr")
    p.set_defaults(func=cmd_verify_grid)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad arguments, 0 on --help
        return int(exc.code or 0)
    try:
        params, result, agreement = args.func(args)
    except (UsageError, CrossedCodesError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    report = _jsonable({
        "command": args.command,
        "parameters": params,
        "result": result,
        "oracle_agreement": agreement,
    })
    print(render(report, args.format))
    return 1 if agreement is False else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
