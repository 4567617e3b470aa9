"""Command-line front end; every check emits one JSON line per report.

Exit codes: 0 all pass, 1 any fail, 2 usage or internal error, 3 only
inconclusive results besides passes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

from . import __version__

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STATUSES = ("pass", "fail", "inconclusive")


class ConfigError(ValueError):
    pass


class UsageError(ValueError):
    pass


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    witness: object = None
    elapsed_ms: int = 0
    seed: int | None = None
    details: dict = field(default_factory=dict)
    tool_version: str = __version__

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "params": self.params,
                "status": self.status,
                "witness": self.witness,
                "elapsed_ms": self.elapsed_ms,
                "seed": self.seed,
                "tool_version": self.tool_version,
                "details": self.details,
            },
            sort_keys=True,
        )


def exit_code(statuses: Iterable[str]) -> int:
    statuses = list(statuses)
    if "fail" in statuses:
        return EXIT_FAIL
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def load_config(path: str, warn: Callable[[str], None] | None = None) -> dict[str, str]:
    """``key=value`` lines; ``#`` starts a comment; the last duplicate wins."""
    warn = warn or (lambda msg: print(f"warning: {msg}", file=sys.stderr))
    out: dict[str, str] = {}
    seen_at: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().replace("-", "_"), value.strip()
            if not sep or not key or not key.isidentifier():
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            if key in out:
                warn(f"{path}:{lineno}: duplicate key {key!r} (line {seen_at[key]}) overridden")
            out[key] = value
            seen_at[key] = lineno
    return out


# -- argument types ------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")


def _r_value(text: str):
    if text in ("sym", "symbolic"):
        return "sym"
    from fractions import Fraction

    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be 'sym' or a rational, got {text!r}")


# -- subcommand bodies -----------------------------------------------------------
# each returns a list of CheckReport (elapsed_ms filled by the caller)


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, int((time.perf_counter() - t0) * 1000)


def cmd_solve_f(a) -> list[CheckReport]:
    from .ftransform import solve_F, verify_transform

    out = []
    for p in range(a.p_min or a.p, a.p + 1):
        if p < 2:
            raise UsageError("p must be >= 2")
        t0 = time.perf_counter()
        sol = solve_F(p)
        chk = verify_transform(sol)
        ms = int((time.perf_counter() - t0) * 1000)
        if a.emit:
            # stderr keeps stdout pure JSON lines
            for i, text in sol.as_text().items():
                print(f"p={p} F_{i} = {text}", file=sys.stderr)
        out.append(
            CheckReport(
                "solve-f", {"p": p}, "pass" if chk.ok else "fail",
                list(chk.witness) if chk.witness else None, ms,
                details={"F": {str(i): s for i, s in sol.as_text().items()}},
            )
        )
    return out


def cmd_check_conj1(a) -> list[CheckReport]:
    from .conjlab import check_conj1

    if a.p_min < 2 or a.p_max < a.p_min:
        raise UsageError("need 2 <= p_min <= p_max")
    out = []
    for p in range(a.p_min, a.p_max + 1):
        rep, ms = _timed(check_conj1, p)
        d = rep.to_dict()
        out.append(
            CheckReport("check-conj1", {"p": p}, "pass" if rep.passed else "fail", d["witness"], ms, details=d)
        )
    return out


def cmd_check_conj2(a) -> list[CheckReport]:
    from .conjlab import check_conj2, monomial_text

    out = []
    for i in a.i:
        rep, ms = _timed(check_conj2, i, a.p_window, a.budget, a.holdout)
        witness = None
        if rep.status == "fail":
            if not rep.leading_ok:
                witness = {"leading_u_coefficient": list(rep.leading_witness)}
            else:
                witness = [v.to_dict() for v in rep.counterexamples]
        elif rep.status == "inconclusive":
            witness = {"inconclusive": [monomial_text(v.monomial) for v in rep.inconclusive]}
        params = {"i": i, "window": list(rep.window), "budget": a.budget, "holdout": a.holdout}
        out.append(CheckReport("check-conj2", params, rep.status, witness, ms, details=rep.to_dict()))
    return out


def _pernici_params(a):
    from .pernici import PerniciParams

    return PerniciParams(r=a.r, H=a.h_max, u_factor=a.u_factor)


def _identity_report(rep, ms) -> CheckReport:
    return CheckReport(
        rep.check, rep.params, rep.status, rep.witnesses or None, ms, details=rep.to_dict()
    )


def cmd_pernici(a) -> list[CheckReport]:
    from .pernici import check_16_17

    rep, ms = _timed(check_16_17, _pernici_params(a))
    report = _identity_report(rep, ms)
    if not all(rep.extra.values()) and report.status == "pass":
        report.status = "fail"
        report.witness = {k: v for k, v in rep.extra.items() if not v}
    return [report]


def cmd_pernici_free_u(a) -> list[CheckReport]:
    from .pernici import check_16_free_u

    rep, ms = _timed(check_16_free_u, _pernici_params(a))
    return [_identity_report(rep, ms)]


def cmd_awesome(a) -> list[CheckReport]:
    from .pernici import AwesomeSpec, awesome_check

    spec = AwesomeSpec.from_z(a.z, a.h_max)
    rep, ms = _timed(awesome_check, spec, _pernici_params(a))
    return [_identity_report(rep, ms)]


def cmd_graph_census(a) -> list[CheckReport]:
    from .graphlab import census

    if a.v % 2 or a.v < 2:
        raise UsageError("v must be a positive even number")
    nside = a.v // 2
    if not 1 <= a.r <= nside:
        raise UsageError("need 1 <= r <= v/2")
    if a.mode == "sample" and a.count < 1:
        raise UsageError("sample mode needs --count >= 1")
    seed = a.seed if a.mode == "sample" else None
    rep, ms = _timed(census, a.mode, nside, a.r, a.count, a.seed, a.threads)
    d = rep.to_dict()
    witness = d["witnesses"] if rep.failing else None
    params = {"mode": a.mode, "r": a.r, "v": a.v}
    if a.mode == "sample":
        params["count"] = a.count
    return [CheckReport("graph-census", params, rep.status, witness, ms, seed, details=d)]


def _chapman_task(args):
    from .stirlconf import chapman_check

    g, w, mode, seed = args
    t0 = time.perf_counter()
    rep = chapman_check(g, w, mode, seed)
    return rep.to_dict(), int((time.perf_counter() - t0) * 1000)


def chapman_seed(base: int, g: int, w: int) -> int:
    return base * 10_000 + g * 100 + w


def cmd_chapman(a) -> list[CheckReport]:
    if a.g_max < 2 or a.symbolic_g_max > a.g_max:
        raise UsageError("need 2 <= symbolic_g_max <= g_max (or symbolic_g_max < 2 to skip)")
    tasks = [(g, w, "random", chapman_seed(a.seed, g, w)) for g in range(2, a.g_max + 1) for w in range(g - 1)]
    tasks += [(g, w, "symbolic", 0) for g in range(2, a.symbolic_g_max + 1) for w in range(g - 1)]
    if a.threads > 1:
        with ProcessPoolExecutor(max_workers=a.threads) as pool:
            results = list(pool.map(_chapman_task, tasks))
    else:
        results = [_chapman_task(t) for t in tasks]
    out = []
    for (g, w, mode, seed), (d, ms) in zip(tasks, results):
        ok = d["passed"]
        witness = None if ok else {"sum": d["sum"], "configurations": d["configurations"]}
        out.append(
            CheckReport(
                "chapman", {"g": g, "w": w, "mode": mode}, "pass" if ok else "fail", witness, ms,
                seed if mode == "random" else None, details=d,
            )
        )
    return out


def cmd_selftest(a) -> list[CheckReport]:
    from .selftest import run_selftest

    out = []
    for name, ok, detail, ms in run_selftest():
        out.append(
            CheckReport(f"selftest:{name}", {}, "pass" if ok else "fail", None if ok else detail, ms, details=detail)
        )
    return out


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="report path (JSON lines, appended); '-' for stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="key=value file; flags override it")

    parser = argparse.ArgumentParser(prog="geniuslab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    sp = add("solve-f", cmd_solve_f, help="solve for F_2..F_p and verify the transform")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--p-min", type=int, default=None, help="solve every p from here to --p")
    sp.add_argument("--emit", action="store_true", help="print each F_i to stderr")

    sp = add("check-conj1", cmd_check_conj1, help="u-degree of every F_i is at most 1")
    sp.add_argument("--p-min", type=int, default=2)
    sp.add_argument("--p-max", type=int, default=10)

    sp = add("check-conj2", cmd_check_conj2, help="coefficients of F_i vanish as p grows")
    sp.add_argument("--i", type=_int_list, default=[2, 3, 4])
    sp.add_argument("--p-window", type=_window, default=None, help="A..B (default max(i,2)..max(i,2)+9)")
    sp.add_argument("--budget", type=int, default=4)
    sp.add_argument("--holdout", type=int, default=2)

    for name, func, extra in (
        ("pernici", cmd_pernici, "log-series identities in j and 1/n"),
        ("pernici-free-u", cmd_pernici_free_u, "vanishing slices with free u_s"),
        ("awesome", cmd_awesome, "identities with shifted correction terms"),
    ):
        sp = add(name, func, help=extra)
        sp.add_argument("--r", type=_r_value, default="sym")
        sp.add_argument("--h-max", type=int, default=3)
        sp.add_argument("--u-factor", type=int, default=None, help="u_s = factor*[x^s]T_r (default 1)")
        if name == "awesome":
            sp.add_argument("--z", type=_int_list, default=[1])

    gp = sub.add_parser("graph", help="graph positivity tools")
    gsub = gp.add_subparsers(dest="graph_command", required=True)
    sp = gsub.add_parser("census", parents=[common], help="positivity over all or sampled graphs")
    sp.set_defaults(func=cmd_graph_census)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--v", type=int, default=12)
    sp.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    sp.add_argument("--count", type=int, default=1000)

    sp = add("chapman", cmd_chapman, help="weighted-configuration sums vanish")
    sp.add_argument("--g-max", type=int, default=6)
    sp.add_argument("--symbolic-g-max", type=int, default=4)

    add("selftest", cmd_selftest, help="quick worked examples from every module")
    return parser


def _subparser_for(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.ArgumentParser:
    """The (sub)parser owning the chosen command, so config defaults land there."""
    node = parser
    rest = list(argv)
    while True:
        subs = [act for act in node._actions if isinstance(act, argparse._SubParsersAction)]
        if not subs:
            return node
        chosen = next((x for x in rest if x in subs[0].choices), None)
        if chosen is None:
            return node
        rest = rest[rest.index(chosen) + 1 :]
        node = subs[0].choices[chosen]


def _apply_config(parser, argv, warn) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = load_config(known.config, warn)
    target = _subparser_for(parser, argv)
    dests = {act.dest for act in target._actions}
    for key in cfg:
        if key not in dests:
            warn(f"config key {key!r} is not used by this command")
    # string defaults go through each option's type= converter
    target.set_defaults(**{k: v for k, v in cfg.items() if k in dests})


def _open_out(path: str) -> TextIO:
    return sys.stdout if path == "-" else open(path, "a", encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    def warn(msg):
        print(f"warning: {msg}", file=sys.stderr)

    try:
        _apply_config(parser, argv, warn)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        reports = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fh = _open_out(args.out)
    try:
        for rep in reports:
            fh.write(rep.to_json() + "\n")
        fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return exit_code(r.status for r in reports)


if __name__ == "__main__":
    sys.exit(main())
