"""Command-line harness: ``verify``, ``bench``, ``run`` and ``tables``.

Exit codes: 0 when everything passes, 1 on a failed check, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from typing import Sequence

from . import oracles, reports
from .algebra import GModule, RotateScaleModule, SignModule, UnitsModule, Zmod, is_prime
from .comparison import drelu_prime, run_drelu, run_fnz, run_sc, sc_prime
from .errors import ConfigurationError, GModuleMPCError, MalformedInputError
from .protocols import run_aot, run_gm, run_gmr, run_mot, run_sgm
from .selection import run_relu, run_select_share, run_sss
from .verification import VERIFY_PROTOCOLS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "GMPC_SEED"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Flag parsing helpers
# ---------------------------------------------------------------------------

_POW = re.compile(r"^\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*(?:([+-])\s*(\d+))?\s*$")


def parse_int_expr(text: str) -> int:
    """Integers such as ``65536``, ``2^64`` or ``2^32-1``."""
    m = _POW.match(text)
    if m:
        base, exp, sign, off = m.groups()
        value = int(base) ** int(exp)
        if sign:
            value += int(off) if sign == "+" else -int(off)
        return value
    try:
        return int(text, 0)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as an integer (try 65536 or 2^64)") from None


def parse_action(group: str | None, module: str | None) -> GModule:
    """``--group`` / ``--module`` pair to a G-module descriptor."""
    if not group:
        raise UsageError("--group is required (signs, units-mod-P or semidirect-N-P)")
    g = group.lower()
    mod = module.lower() if module else None

    def mod_order(prefixes) -> int | None:
        if mod is None:
            return None
        for pre in prefixes:
            if mod.startswith(pre):
                return parse_int_expr(mod[len(pre):])
        raise UsageError(f"module {module!r} does not fit group {group!r}")

    if g == "signs":
        N = mod_order(("zmod-", "z-"))
        if N is None:
            raise UsageError("--module zmod-N is required with --group signs")
        if N < 2:
            raise UsageError("module order must be at least 2")
        return SignModule(N)
    m = re.fullmatch(r"units-mod-(\d+)", g)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise UsageError(f"units-mod-{p}: {p} is not prime")
        N = mod_order(("zmod-", "fp-"))
        if N is not None and N != p:
            raise UsageError(f"units mod {p} acts on Z/{p}, not Z/{N}")
        return UnitsModule(p)
    m = re.fullmatch(r"semidirect-(\d+)-(\d+)", g)
    if m:
        n, p = int(m.group(1)), int(m.group(2))
        if n < 1 or not is_prime(p):
            raise UsageError(f"semidirect-{n}-{p}: need n >= 1 and p prime")
        if mod is not None and mod not in (f"fp-{p}^{n}", f"fp-{p}-{n}"):
            raise UsageError(f"semidirect-{n}-{p} acts on fp-{p}^{n}, not {module!r}")
        return RotateScaleModule(n, p)
    raise UsageError(f"unknown group {group!r}")


def resolve_prime(arg: str, protocol: str, n: int | None) -> int | None:
    """``auto`` or an explicit prime, checked against the protocol's lower bound."""
    if protocol not in ("sc", "drelu", "relu", "fnz"):
        return None
    if n is None:
        raise UsageError(f"--n is required for {protocol}")
    bound = n + 3 if protocol == "sc" else n + 2
    if arg == "auto":
        return sc_prime(n) if protocol == "sc" else drelu_prime(n)
    p = parse_int_expr(arg)
    if not is_prime(p):
        raise UsageError(f"--prime {p} is not prime")
    if p < bound:
        raise UsageError(f"--prime {p} is too small for {protocol} with n={n}; need p >= {bound}")
    return p


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        out.write(",".join(cols) + "\n")
        for r in rows:
            out.write(",".join(str(r[c]) for c in cols) + "\n")
        return
    out.write("| " + " | ".join(cols) + " |\n")
    out.write("|" + "|".join("---" for _ in cols) + "|\n")
    for r in rows:
        out.write("| " + " | ".join(str(r[c]) for c in cols) + " |\n")


def _check_n(args, protocol):
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be positive")
    if protocol in ("drelu", "relu") and args.n is not None and args.n < 2:
        raise UsageError(f"{protocol} needs --n >= 2")


def cmd_verify(args, out) -> int:
    protocol = args.protocol
    _check_n(args, protocol)
    p = resolve_prime(args.prime, protocol, args.n) if protocol in ("sc", "drelu", "relu", "fnz") else None
    N = parse_int_expr(args.modulus) if args.modulus else None
    if protocol in ("sss", "ss") and (N is None or N < 2):
        raise UsageError(f"--modulus N >= 2 is required for {protocol}")
    if N is not None and N > 64 and protocol in ("sss", "ss"):
        raise UsageError("exhaustive select-share verification needs --modulus <= 64")
    if protocol == "sc" and args.n is not None and args.n > 8 and args.trials is None:
        args.trials = 1000
    suites = run_suite(protocol, n=args.n, N=N, p=p, trials=args.trials, seed=args.seed,
                       reduced=not args.unreduced)
    suites.sort(key=lambda s: s.name)
    for s in suites:
        out.write(s.summary() + "\n")
        for case in s.failures:
            out.write(f"  failed case: {case!r}\n")
        if s.p2_online:
            out.write(f"  dealer sent {s.p2_online} online message(s)\n")
    passed = sum(s.ok for s in suites)
    out.write(f"{passed}/{len(suites)} suites passed\n")
    return EXIT_OK if passed == len(suites) else EXIT_FAIL


def _bench_params(args) -> dict:
    proto = args.protocol
    params: dict = {}
    if proto in ("gm", "sgm", "gmr"):
        params["action"] = parse_action(args.group, args.module)
        return params
    if proto in ("sss", "ss"):
        if not args.modulus:
            raise UsageError(f"--modulus is required for {proto}")
        params["N"] = parse_int_expr(args.modulus)
        if params["N"] < 2:
            raise UsageError("--modulus must be at least 2")
        return params
    if proto == "mot":
        if not args.modulus:
            raise UsageError("--modulus m is required for mot")
        params["m"] = parse_int_expr(args.modulus)
        if params["m"] < 2:
            raise UsageError("--modulus must be at least 2")
        return params
    if args.n is None:
        raise UsageError(f"--n is required for {proto}")
    _check_n(args, proto)
    params["n"] = args.n
    if proto == "aot":
        params["m"] = parse_int_expr(args.modulus) if args.modulus else 2
        return params
    if proto == "fnz" and args.n < 1:
        raise UsageError("--n must be positive")
    params["p"] = resolve_prime(args.prime, proto, args.n)
    if proto in ("sc", "drelu"):
        params["reduced"] = not args.unreduced
    elif args.unreduced:
        raise UsageError(f"--unreduced only applies to sc and drelu, not {proto}")
    return params


def cmd_bench(args, out) -> int:
    params = _bench_params(args)
    m = reports.measure(args.protocol, seed=args.seed, **params)
    f = m.formula
    d_off, d_on, d_r = m.deltas
    rows = [
        {"metric": "offline_bits", "measured": f"{m.offline:.6f}", "formula": f"{f.offline:.6f}", "delta": f"{d_off:.1e}"},
        {"metric": "online_bits", "measured": f"{m.online:.6f}", "formula": f"{f.online:.6f}", "delta": f"{d_on:.1e}"},
        {"metric": "total_bits", "measured": f"{m.total:.6f}", "formula": f"{f.total:.6f}",
         "delta": f"{m.total - f.total:.1e}"},
        {"metric": "rounds", "measured": str(m.rounds), "formula": str(f.rounds), "delta": str(d_r)},
    ]
    out.write(f"# bench {args.protocol} {_describe_params(params)}\n")
    _emit(rows, args.format, out)
    out.write(f"offline {m.offline:.1f}, online {m.online:.1f}, total {m.total:.1f}, rounds {m.rounds}\n")
    if args.protocol == "fnz":
        out.write("note: the recovery step needs two sequential messages, so FNZ takes 2 rounds; "
                  "a 1-round figure is sometimes quoted for it\n")
    if args.transcript:
        _write_transcript(args.transcript, m.result.meter)
    ok = m.matches_formula()
    if not ok:
        out.write("measured cost differs from the closed form\n")
    return EXIT_OK if ok else EXIT_FAIL


def _describe_params(params: dict) -> str:
    parts = []
    for k, v in params.items():
        if k == "action":
            parts.append(f"group={v.group} module={v.module}")
        else:
            parts.append(f"{k}={v}")
    return " ".join(parts)


def _write_transcript(path: str, meter) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        meter.dump_jsonl(fh)


def _split(x: int, N: int, rng) -> tuple[int, int]:
    r = rng.randrange(N)
    return r, (x - r) % N


def _value(arg, default_rng_bound: int, rng) -> int:
    return parse_int_expr(arg) if arg is not None else rng.randrange(default_rng_bound)


def cmd_run(args, out) -> int:
    """One execution on given (or random) plaintext inputs; prints shares and the oracle."""
    rng = random.Random(args.seed)
    proto = args.protocol
    seed = args.seed
    if proto in ("gm", "sgm", "gmr"):
        action = parse_action(args.group, args.module)
        G, A = action.group, action.module
        if proto == "gm":
            g, a = G.random(rng), A.random(rng)
            res = run_gm(action, g, a, seed)
            got, want = A.add(res.p0, res.p1), oracles.act(action, g, a)
        elif proto == "sgm":
            g0, a0, g1, a1 = G.random(rng), A.random(rng), G.random(rng), A.random(rng)
            res = run_sgm(action, g0, a0, g1, a1, seed)
            got, want = A.add(res.p0, res.p1), oracles.shared_act(action, g0, a0, g1, a1)
        else:
            b0, b1 = A.random(rng), A.random(rng)
            res = run_gmr(action, b0, b1, seed)
            b = A.add(b0, b1)
            got, want = oracles.recovered(action, b, res.p0, res.p1), True
    elif proto == "mot":
        m = parse_int_expr(args.modulus) if args.modulus else 2
        a = _value(args.x, 2, rng) % 2
        a0 = rng.randrange(2)
        res = run_mot(m, a0, a ^ a0, seed)
        got, want = (res.p0 + res.p1) % m, oracles.lift_bit(a, m)
    elif proto == "aot":
        if args.n is None:
            raise UsageError("--n is required for aot")
        q = parse_int_expr(args.modulus) if args.modulus else 2
        B = Zmod(q)
        i = _value(args.x, args.n, rng)
        g = tuple(B.random(rng) for _ in range(args.n))
        res = run_aot(args.n, B, i, g, seed)
        got, want = B.add(res.p0, res.p1), oracles.index(g, i)
    elif proto == "fnz":
        n = args.n
        p = resolve_prime(args.prime, proto, n)
        bits = [int(c) for c in args.bits] if args.bits else [rng.randrange(2) for _ in range(n)]
        if len(bits) != n or not any(bits) or set(bits) - {0, 1}:
            raise UsageError(f"--bits must be a nonzero 0/1 string of length {n}")
        pairs = [_split(b, p, rng) for b in bits]
        res = run_fnz(p, [x for x, _ in pairs], [y for _, y in pairs], seed)
        got, want = (res.p0 + res.p1) % n, oracles.first_nonzero(bits)
    elif proto == "sc":
        _check_n(args, proto)
        p = resolve_prime(args.prime, proto, args.n)
        x, y = _value(args.x, 1 << args.n, rng), _value(args.y, 1 << args.n, rng)
        res = run_sc(args.n, x, y, p, not args.unreduced, seed)
        got, want = (res.p0 + res.p1) % 2, oracles.less_than(x, y)
    elif proto in ("drelu", "relu"):
        _check_n(args, proto)
        p = resolve_prime(args.prime, proto, args.n)
        N = 1 << args.n
        x = _value(args.x, N, rng) % N
        u, v = _split(x, N, rng)
        if proto == "drelu":
            res = run_drelu(args.n, u, v, p, not args.unreduced, seed)
            got, want = (res.p0 + res.p1) % 2, oracles.drelu(x, args.n)
        else:
            res = run_relu(args.n, u, v, p, seed)
            got, want = (res.p0 + res.p1) % N, oracles.relu(x, args.n)
    elif proto in ("sss", "ss"):
        if not args.modulus:
            raise UsageError(f"--modulus is required for {proto}")
        N = parse_int_expr(args.modulus)
        if N < 2:
            raise UsageError("--modulus must be at least 2")
        a = _value(args.bit, 2, rng) % 2
        a0 = rng.randrange(2)
        x = _value(args.x, N, rng) % N
        xs = _split(x, N, rng)
        if proto == "sss":
            res = run_sss(N, xs[0], xs[1], a0, a ^ a0, seed)
            got, want = (res.p0 + res.p1) % N, oracles.select_scale(a, x, N)
        else:
            y = _value(args.y, N, rng) % N
            res = run_select_share(N, xs, _split(y, N, rng), (a0, a ^ a0), seed)
            got, want = (res.p0 + res.p1) % N, oracles.select(a, x, y)
    else:
        raise UsageError(f"unknown protocol {proto!r}")
    meter = res.meter
    out.write(f"shares: P0={res.p0!r} P1={res.p1!r}\n")
    out.write(f"output: {got!r} expected: {want!r}\n")
    out.write(
        f"offline {meter.offline_bits:.1f}, online {meter.online_bits:.1f}, "
        f"total {meter.total_bits:.1f}, rounds {meter.online_rounds}\n"
    )
    if args.transcript:
        _write_transcript(args.transcript, meter)
    return EXIT_OK if got == want else EXIT_FAIL


def cmd_tables(args, out) -> int:
    which = reports.TABLES if args.which == "all" else (args.which,)
    if args.format == "json" and len(which) > 1:
        out.write(json.dumps([reports.build_table(w, args.seed) for w in which], indent=2) + "\n")
        return EXIT_OK
    for i, w in enumerate(which):
        if i and args.format == "md":
            out.write("\n")
        out.write(reports.render(reports.build_table(w, args.seed), args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmpc", description="Three-party G-module MPC simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, protocols):
        p.add_argument("--protocol", required=True, choices=protocols)
        p.add_argument("--n", type=int, help="bit width or vector length")
        p.add_argument("--modulus", help="ring modulus N (or m for mot), e.g. 2^64")
        p.add_argument("--prime", default="auto", help="'auto' or an explicit prime")
        p.add_argument("--group", help="signs, units-mod-P or semidirect-N-P")
        p.add_argument("--module", help="zmod-N, fp-P or fp-P^N")
        p.add_argument("--unreduced", action="store_true", help="send the AOT index shift online")
        p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")

    v = sub.add_parser("verify", help="run correctness, privacy and property suites")
    common(v, VERIFY_PROTOCOLS)
    v.add_argument("--trials", type=int, help="random trials instead of the exhaustive sweep")

    b = sub.add_parser("bench", help="measure communication against the closed forms")
    common(b, reports.PROTOCOLS)
    b.add_argument("--format", choices=("md", "csv", "json"), default="md")
    b.add_argument("--transcript", help="write the envelope log as JSON lines")

    r = sub.add_parser("run", help="one execution on chosen inputs")
    common(r, reports.PROTOCOLS)
    r.add_argument("--x", help="P0-side plaintext (x, index or bit)")
    r.add_argument("--y", help="second plaintext operand")
    r.add_argument("--bit", help="selection bit for sss/ss")
    r.add_argument("--bits", help="0/1 string for fnz")
    r.add_argument("--transcript", help="write the envelope log as JSON lines")

    t = sub.add_parser("tables", help="emit the comparison tables")
    t.add_argument("--which", choices=reports.TABLES + ("all",), default="all")
    t.add_argument("--format", choices=("md", "csv", "json"), default="md")
    t.add_argument("--seed", type=int, default=None)
    return parser


COMMANDS = {"verify": cmd_verify, "bench": cmd_bench, "run": cmd_run, "tables": cmd_tables}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigurationError, MalformedInputError) as exc:
        sys.stderr.write(f"gmpc {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except GModuleMPCError as exc:
        sys.stderr.write(f"gmpc {args.command}: protocol failure: {exc}\n")
        return EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
