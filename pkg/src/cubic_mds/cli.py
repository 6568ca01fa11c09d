"""Command-line front end.

Single-shot computations, verification suites, and table emission.
stdout carries data and is byte-identical across runs for identical
arguments; timings and diagnostics go to stderr.  Exit codes: 0 on
success, 1 when a verification comparison fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

from . import arith, forms, mds, sqcount, verify
from .errors import OracleScaleError, PoleError
from .euler import LocalFactorInput, local_factor_closed, local_factor_oracle
from .lfunc import (
    DirichletCharacter,
    Z_n_closed,
    character_eta,
    characters_mod24,
    dirichlet_L,
    dirichlet_L_direct,
    psi_n_character,
)

# ======================================================================
# formatting and parsing helpers
# ======================================================================


def _g(x: float) -> str:
    """17 significant digits: loses nothing on a double round trip."""
    return format(float(x), ".17g")


def _cx(z: complex) -> str:
    z = complex(z)
    sign = "+" if z.imag >= 0 else "-"
    return f"{_g(z.real)}{sign}{_g(abs(z.imag))}j"


def parse_complex(text: str) -> complex:
    """"RE,IM" or "RE" (imaginary part zero)."""
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise ValueError(f"cannot parse complex number from {text!r}")
    try:
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise ValueError(f"cannot parse complex number from {text!r}") from None
    return complex(re, im)


def parse_character(spec: str) -> DirichletCharacter:
    """Character SPEC: 'eta:-N' (the symbol (-N/.)), 'mod24:J' with J a
    3-bit index giving the values at 5, 7, 13 (set bit = -1), or
    'psi:N' (the completed twist attached to N)."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise ValueError(f"character spec {spec!r} needs KIND:ARG")
    if kind == "eta":
        t = int(arg)
        if t >= 0:
            raise ValueError("eta takes a negative top, e.g. eta:-5")
        return character_eta(-t)
    if kind == "mod24":
        j = int(arg)
        if not 0 <= j <= 7:
            raise ValueError("mod24 index must be 0..7")
        return characters_mod24()[j]
    if kind == "psi":
        return psi_n_character(int(arg))
    raise ValueError(f"unknown character kind {kind!r}; use eta, mod24, psi")


def _comparison_payload(c: mds.SeriesComparison) -> dict:
    return json.loads(c.to_json())


def _status(comparisons: list[mds.SeriesComparison]) -> str:
    if not comparisons:
        return "pass"
    hits = [c.passed for c in comparisons]
    if all(hits):
        return "pass"
    if any(hits):
        return "partial"
    return "fail"


def _emit(record: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        for ln in lines:
            print(ln)


def _exit_code(status: str) -> int:
    return 0 if status == "pass" else 1


def _parallel_map(fn, items, jobs: int):
    """Ordered map; jobs > 1 fans slices out to worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with Pool(min(jobs, len(items))) as pool:
        return pool.map(fn, items)


# ======================================================================
# subcommands
# ======================================================================


def _cmd_count(args) -> int:
    m, n = args.m, args.n
    fast = sqcount.count_roots(m, n)
    lines = [f"C({m}, {n}) = {fast} (formula)"]
    results = [{"name": "formula", "value": fast}]
    comparisons: list[mds.SeriesComparison] = []
    try:
        brute = sqcount.count_roots_bruteforce(m, n)
    except OracleScaleError as e:
        print(f"exhaustive oracle skipped: {e}", file=sys.stderr)
    else:
        lines.append(f"C({m}, {n}) = {brute} (exhaustive)")
        results.append({"name": "exhaustive", "value": brute})
        spec = mds.TruncationSpec(
            m_cutoff=m, n_cutoff=max(abs(n), 1), local_order=1, tolerance=1e-15
        )
        comparisons.append(
            mds.SeriesComparison.compare(complex(fast), complex(brute), spec)
        )
    status = _status(comparisons)
    lines.append(f"status: {status}")
    record = {
        "command": "count",
        "parameters": {"m": m, "n": n},
        "results": results,
        "comparisons": [_comparison_payload(c) for c in comparisons],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_forms(args) -> int:
    rows = list(
        forms.enumerate_representatives(args.mmax, args.nmax, args.odd_squarefree)
    )
    lines = ["a,b,c,n"] + [f"{a},{b},{c},{n}" for a, b, c, n in rows]
    record = {
        "command": "forms",
        "parameters": {
            "mmax": args.mmax,
            "nmax": args.nmax,
            "odd_squarefree": bool(args.odd_squarefree),
        },
        "results": [list(r) for r in rows],
        "comparisons": [],
        "status": "pass",
    }
    _emit(record, lines, args.format)
    return 0


def _cmd_euler(args) -> int:
    s = parse_complex(args.s)
    closed = local_factor_closed(args.p, args.n, s)
    oracle = local_factor_oracle(LocalFactorInput(p=args.p, n=args.n, s=s, K=args.k))
    spec = mds.TruncationSpec(
        m_cutoff=1, n_cutoff=args.n, local_order=args.k, tolerance=args.tol
    )
    cmp0 = mds.SeriesComparison.compare(closed, oracle, spec)
    status = _status([cmp0])
    lines = [
        f"closed  = {_cx(closed)}",
        f"oracle  = {_cx(oracle)} (K={args.k})",
        f"rel_err = {_g(cmp0.rel_err)}",
        f"status: {status}",
    ]
    record = {
        "command": "euler",
        "parameters": {"p": args.p, "n": args.n, "s": args.s, "k": args.k,
                       "tol": args.tol},
        "results": [
            {"name": "closed", "re": closed.real, "im": closed.imag},
            {"name": "oracle", "re": oracle.real, "im": oracle.imag},
        ],
        "comparisons": [_comparison_payload(cmp0)],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_zn(args) -> int:
    s = parse_complex(args.s)
    closed = Z_n_closed(args.n, s)
    oracle = mds.Z_n_oracle(args.n, s, args.cutoff)
    product = mds.Z_n_euler_product(args.n, s, args.prime_cutoff)
    spec = mds.TruncationSpec(
        m_cutoff=args.cutoff, n_cutoff=args.n, tolerance=args.tol
    )
    cmp_oracle = mds.SeriesComparison.compare(closed, oracle, spec)
    cmp_product = mds.SeriesComparison.compare(closed, product, spec)
    comparisons = [cmp_oracle, cmp_product]
    status = _status(comparisons)
    lines = [
        f"closed  = {_cx(closed)}",
        f"oracle  = {_cx(oracle)} (cutoff={args.cutoff})",
        f"product = {_cx(product)} (primes<={args.prime_cutoff})",
        f"rel_err closed/oracle  = {_g(cmp_oracle.rel_err)}",
        f"rel_err closed/product = {_g(cmp_product.rel_err)}",
        f"status: {status}",
    ]
    record = {
        "command": "zn",
        "parameters": {"n": args.n, "s": args.s, "cutoff": args.cutoff,
                       "prime_cutoff": args.prime_cutoff, "tol": args.tol},
        "results": [
            {"name": "closed", "re": closed.real, "im": closed.imag},
            {"name": "oracle", "re": oracle.real, "im": oracle.imag},
            {"name": "product", "re": product.real, "im": product.imag},
        ],
        "comparisons": [_comparison_payload(c) for c in comparisons],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_lfun(args) -> int:
    chi = parse_character(args.char)
    s = parse_complex(args.s)
    val = dirichlet_L(chi, s)
    results = [
        {"name": "hurwitz", "re": val.value.real, "im": val.value.imag,
         "error_estimate": val.error_estimate},
    ]
    lines = [
        f"L(s, chi) = {_cx(val.value)} (modulus {chi.modulus}, "
        f"conductor {chi.conductor})",
        f"method: {val.method}, error_estimate {_g(val.error_estimate)}",
    ]
    comparisons: list[mds.SeriesComparison] = []
    if s.real > 1.5:
        direct = dirichlet_L_direct(chi, s, 200000)
        spec = mds.TruncationSpec(
            m_cutoff=200000, n_cutoff=chi.modulus, tolerance=1e-8
        )
        cmp0 = mds.SeriesComparison.compare(val.value, direct.value, spec)
        comparisons.append(cmp0)
        results.append(
            {"name": "direct", "re": direct.value.real, "im": direct.value.imag,
             "error_estimate": direct.error_estimate}
        )
        lines.append(f"direct    = {_cx(direct.value)} (200000 terms)")
        lines.append(f"rel_err   = {_g(cmp0.rel_err)}")
    status = _status(comparisons)
    lines.append(f"status: {status}")
    record = {
        "command": "lfun",
        "parameters": {"char": args.char, "s": args.s},
        "results": results,
        "comparisons": [_comparison_payload(c) for c in comparisons],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_zeta2(args) -> int:
    s1 = parse_complex(args.s1)
    s2 = parse_complex(args.s2)
    spec = mds.TruncationSpec(
        m_cutoff=args.mmax, n_cutoff=args.nmax, tolerance=1e-13
    )
    zd = mds.Z_direct(s1, s2, spec)
    zc = mds.Z_coeff(s1, s2, spec)
    cmp_routes = mds.SeriesComparison.compare(zd, zc, spec)
    comparisons = [cmp_routes]
    lines = [
        f"Z_direct = {_cx(zd)}",
        f"Z_coeff  = {_cx(zc)}",
        f"rel_err  = {_g(cmp_routes.rel_err)} (tol 1e-13)",
    ]
    results = [
        {"name": "Z_direct", "re": zd.real, "im": zd.imag},
        {"name": "Z_coeff", "re": zc.real, "im": zc.imag},
    ]
    if s1.real > 1.5:
        # Tolerance for the decomposition follows the inner tail bound.
        tol = max(1e-8, 10.0 * mds.coefficient_tail_bound(args.mmax, s1.real))
        dspec = mds.TruncationSpec(
            m_cutoff=args.mmax, n_cutoff=args.nmax, tolerance=tol
        )
        cmp_dec = mds.decomposition_check(s1, s2, dspec)
        comparisons.append(cmp_dec)
        results.append(
            {"name": "decomposition_lhs", "re": cmp_dec.lhs.real,
             "im": cmp_dec.lhs.imag}
        )
        results.append(
            {"name": "decomposition_rhs", "re": cmp_dec.rhs.real,
             "im": cmp_dec.rhs.imag}
        )
        lines.append(
            f"decomposition rel_err = {_g(cmp_dec.rel_err)} (tol {_g(tol)})"
        )
    else:
        print("decomposition skipped: needs Re(s1) > 1.5", file=sys.stderr)
    status = _status(comparisons)
    lines.append(f"status: {status}")
    record = {
        "command": "zeta2",
        "parameters": {"s1": args.s1, "s2": args.s2, "mmax": args.mmax,
                       "nmax": args.nmax},
        "results": results,
        "comparisons": [_comparison_payload(c) for c in comparisons],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_fe(args) -> int:
    grid = [parse_complex(t) for t in args.grid]
    comps = mds.functional_equation_check(args.n, grid, tolerance=args.tol)
    lines = ["s_re,s_im,rel_err,passed"]
    for s, c in zip(grid, comps):
        lines.append(f"{_g(s.real)},{_g(s.imag)},{_g(c.rel_err)},{c.passed}")
    status = _status(comps)
    lines.append(f"status: {status}")
    record = {
        "command": "fe",
        "parameters": {"n": args.n, "grid": list(args.grid), "tol": args.tol},
        "results": [
            {"s_re": s.real, "s_im": s.imag, "rel_err": c.rel_err,
             "passed": c.passed}
            for s, c in zip(grid, comps)
        ],
        "comparisons": [_comparison_payload(c) for c in comps],
        "status": status,
    }
    _emit(record, lines, args.format)
    return _exit_code(status)


def _cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    lines = [r.line() for r in results]
    passed = sum(1 for r in results if r.passed)
    lines.append(f"verified {passed}/{len(results)} criteria")
    for r in results:
        print(
            f"criterion {r.number}: {r.elapsed:.1f}s (budget {r.budget:.0f}s)",
            file=sys.stderr,
        )
    status = "pass" if passed == len(results) else (
        "partial" if passed else "fail"
    )
    record = {
        "command": "verify",
        "parameters": {"suite": args.suite},
        "results": [
            {"number": r.number, "name": r.name, "passed": r.passed,
             "detail": r.detail}
            for r in results
        ],
        "comparisons": [],
        "status": status,
    }
    _emit(record, lines, args.format)
    return 0 if status == "pass" else 1


def _zn_row(task) -> tuple:
    n, s, cutoff = task
    closed = Z_n_closed(n, s)
    oracle = mds.Z_n_oracle(n, s, cutoff)
    rel = abs(closed - oracle) / max(abs(closed), abs(oracle), 1e-300)
    return (n, closed, oracle, rel)


def _cmd_table(args) -> int:
    s = parse_complex(args.s)
    if args.kind == "zn":
        ns = [
            n for n in range(1, args.nmax + 1, 2) if arith.is_squarefree(n)
        ]
        rows = _parallel_map(
            _zn_row, [(n, s, args.cutoff) for n in ns], args.jobs
        )
        lines = ["n,closed_re,closed_im,oracle_re,oracle_im,rel_err"]
        for n, closed, oracle, rel in rows:
            lines.append(
                f"{n},{_g(closed.real)},{_g(closed.imag)},"
                f"{_g(oracle.real)},{_g(oracle.imag)},{_g(rel)}"
            )
        results = [
            {"n": n, "closed_re": c.real, "closed_im": c.imag,
             "oracle_re": o.real, "oracle_im": o.imag, "rel_err": rel}
            for n, c, o, rel in rows
        ]
    else:
        lines = ["m,n,coefficient"]
        results = []
        for n in range(1, args.nmax + 1, 2):
            if not arith.is_squarefree(n):
                continue
            coeffs = sqcount.coefficient_sieve(n, args.mmax)
            for m in range(1, args.mmax + 1):
                lines.append(f"{m},{n},{coeffs[m]}")
                results.append({"m": m, "n": n, "coefficient": coeffs[m]})
    record = {
        "command": "table",
        "parameters": {"kind": args.kind, "s": args.s, "nmax": args.nmax,
                       "mmax": args.mmax, "cutoff": args.cutoff},
        "results": results,
        "comparisons": [],
        "status": "pass",
    }
    _emit(record, lines, args.format)
    return 0


# ======================================================================
# argument wiring
# ======================================================================


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubic-mds",
        description="Verifiable evaluators for the cubic-form double series.",
    )
    default_jobs = int(os.environ.get("CUBIC_MDS_JOBS", os.cpu_count() or 1))
    parser.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format for stdout (default text)",
    )
    parser.add_argument(
        "--jobs", type=int, default=default_jobs,
        help="worker processes for sliced computations "
             "(default CUBIC_MDS_JOBS or core count); results are "
             "assembled in fixed order either way",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="square-root count, formula vs exhaustive")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("forms", help="stream reduced representatives as CSV")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--odd-squarefree", action="store_true",
                   help="keep only odd squarefree n")
    p.set_defaults(fn=_cmd_forms)

    p = sub.add_parser("euler", help="local factor, closed vs truncated series")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--s", required=True, help='complex "RE,IM" or "RE"')
    p.add_argument("--k", type=int, default=60, help="series terms (default 60)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_euler)

    p = sub.add_parser("zn", help="inner series: closed vs sum vs product")
    p.add_argument("n", type=int)
    p.add_argument("--s", required=True)
    p.add_argument("--cutoff", type=int, default=100000)
    p.add_argument("--prime-cutoff", type=int, default=10000)
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(fn=_cmd_zn)

    p = sub.add_parser("lfun", help="Dirichlet L value")
    p.add_argument("--char", required=True,
                   help="eta:-N | mod24:J | psi:N")
    p.add_argument("--s", required=True)
    p.set_defaults(fn=_cmd_lfun)

    p = sub.add_parser("zeta2", help="double series: two routes + decomposition")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    p.add_argument("--mmax", type=int, default=300)
    p.add_argument("--nmax", type=int, default=300)
    p.set_defaults(fn=_cmd_zeta2)

    p = sub.add_parser("fe", help="completed functional equation residuals")
    p.add_argument("n", type=int)
    p.add_argument("--grid", nargs="+", default=["0.3", "0.75", "0.6,2", "0.5,5"])
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_fe)

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("suite", nargs="?", default="all",
                   help="'all', a number 1..10, or a suite name")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("table", help="emit CSV/JSON tables")
    p.add_argument("kind", choices=("zn", "coeffs"))
    p.add_argument("--s", default="2.5", help="s for zn tables")
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--mmax", type=int, default=50)
    p.add_argument("--cutoff", type=int, default=100000,
                   help="series cutoff for zn tables")
    p.set_defaults(fn=_cmd_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0
    except (ValueError, PoleError, OracleScaleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
