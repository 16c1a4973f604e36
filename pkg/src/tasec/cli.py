"""Command-line front end.

Subcommands:

  asc        one ASC value for one operating point
  sweep      CSV sweep over a dB axis (figure-style output)
  crossover  ratio at which the two sub-optimal closed forms meet
  verify     run the self-check suite

All SNRs cross this boundary in dB and are converted to linear exactly once.
Floats are rendered with 17 significant digits so CSV output round-trips
doubles and is byte-stable across runs. Exit codes: 0 success, 1 computation
or check failure, 2 usage error, 3 no crossover in the bracket.
"""

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .channel import RngStream, Scenario
from .errors import (ConvergenceError, DegenerateNormalizationError,
                     NoCrossoverError, UnsupportedSchemeError)
from .experiments import (SweepSpec, SweptParameter, db_to_linear,
                          find_crossover, run_sweep)
from .secrecy import (asc_btas_closed, asc_etas_closed, asc_quadrature, mc_asc)
from .selection import TasScheme
from .verification import run_verification

_UINT64_MAX = 2**64 - 1

DEFAULTS = {
    "method": "closed",
    "trials": 1_000_000,
    "seed": 42,
    "antennas": [2],
    "gamma_b_db": 10.0,
    "gamma_e_db": 10.0,
    "threads": 1,
    "bracket_db": [-30.0, 30.0],
    "normalize_otas": False,
    "mc_overlay": False,
    "out": None,
    "scheme": None,
    "swept": None,
    "from_db": None,
    "to_db": None,
    "points": None,
}

SWEEP_CSV_HEADER = ("swept_value_db", "gamma_b0_db", "gamma_e0_db", "M",
                    "scheme", "method", "asc", "std_error", "trials")
ASC_CSV_HEADER = ("scheme", "method", "gamma_b0_db", "gamma_e0_db", "M",
                  "asc", "std_error", "trials")
CROSSOVER_CSV_HEADER = ("gamma_b0_db", "M", "crossover_ratio_db", "residual")


class UsageError(Exception):
    """Bad flags, bad config keys, or statically invalid combinations."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    schemes: list[TasScheme]
    gamma_b_db: float
    gamma_e_db: float
    antennas: list[int]
    method: str
    trials: int
    seed: int
    threads: int
    swept: SweptParameter | None
    from_db: float | None
    to_db: float | None
    points: int | None
    normalize_otas: bool
    mc_overlay: bool
    bracket_db: tuple[float, float]
    out: str | None


# ----------------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="tasec", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                parser_class=_Parser)

    def add_base(p):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--threads", type=int, default=None,
                       help="worker bound for Monte Carlo chunks (output-invariant)")

    def add_gamma_b(p):
        p.add_argument("--gamma-b-db", type=float, default=None,
                       help="legitimate reference SNR [dB]")

    def add_antennas(p, repeatable):
        p.add_argument("-M", "--antennas", type=int, action="append", default=None,
                       help="transmit antenna count"
                            + (" (repeatable)" if repeatable else ""))

    def add_rng(p):
        p.add_argument("--trials", type=int, default=None,
                       help="Monte Carlo trial count")
        p.add_argument("--seed", type=int, default=None,
                       help="64-bit unsigned RNG seed")

    def add_schemes(p):
        p.add_argument("--scheme", choices=[s.value for s in TasScheme],
                       action="append", default=None)

    p_asc = sub.add_parser("asc", help="single-point average secrecy capacity")
    add_base(p_asc)
    add_gamma_b(p_asc)
    p_asc.add_argument("--gamma-e-db", type=float, default=None,
                       help="eavesdropper reference SNR [dB]")
    add_antennas(p_asc, repeatable=False)
    add_rng(p_asc)
    add_schemes(p_asc)
    p_asc.add_argument("--method", choices=["closed", "quad", "mc"], default=None)
    p_asc.add_argument("--out", default=None, help="output path (default stdout)")

    p_sweep = sub.add_parser("sweep", help="CSV sweep over one dB axis")
    add_base(p_sweep)
    add_gamma_b(p_sweep)
    p_sweep.add_argument("--gamma-e-db", type=float, default=None,
                         help="eavesdropper reference SNR [dB]")
    add_antennas(p_sweep, repeatable=True)
    add_rng(p_sweep)
    add_schemes(p_sweep)
    p_sweep.add_argument("--swept", choices=[s.value for s in SweptParameter],
                         default=None, help="which axis the grid walks")
    p_sweep.add_argument("--from-db", type=float, default=None, dest="from_db")
    p_sweep.add_argument("--to-db", type=float, default=None, dest="to_db")
    p_sweep.add_argument("--points", type=int, default=None)
    p_sweep.add_argument("--normalize-otas", action="store_true", default=None,
                         help="divide every row by the O-TAS Monte Carlo value")
    p_sweep.add_argument("--mc-overlay", action="store_true", default=None,
                         help="also emit Monte Carlo rows for closed-form schemes")
    p_sweep.add_argument("--out", default=None)

    p_cross = sub.add_parser("crossover",
                             help="B-TAS/E-TAS crossover ratio for one operating point")
    add_base(p_cross)
    add_gamma_b(p_cross)
    add_antennas(p_cross, repeatable=False)
    p_cross.add_argument("--bracket-db", type=float, nargs=2, default=None,
                         metavar=("LO", "HI"))
    p_cross.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="run the self-check suite")
    add_base(p_verify)
    add_rng(p_verify)
    return parser


_CONFIG_PARSERS = {
    "scheme": lambda v: [s.strip() for s in v.split(",") if s.strip()],
    "gamma_b_db": float,
    "gamma_e_db": float,
    "antennas": lambda v: [int(s) for s in v.replace(",", " ").split()],
    "method": str,
    "trials": int,
    "seed": int,
    "threads": int,
    "swept": str,
    "from_db": float,
    "to_db": float,
    "points": int,
    "normalize_otas": lambda v: _parse_bool(v),
    "mc_overlay": lambda v: _parse_bool(v),
    "bracket_db": lambda v: [float(s) for s in v.replace(",", " ").split()],
    "out": str,
}

_SUBCOMMAND_KEYS = {
    "asc": {"scheme", "gamma_b_db", "gamma_e_db", "antennas", "method",
            "trials", "seed", "threads", "out"},
    "sweep": {"scheme", "gamma_b_db", "gamma_e_db", "antennas", "trials",
              "seed", "threads", "swept", "from_db", "to_db", "points",
              "normalize_otas", "mc_overlay", "out"},
    "crossover": {"gamma_b_db", "antennas", "bracket_db", "threads", "out"},
    "verify": {"trials", "seed", "threads"},
}


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _read_config_file(path: str, allowed: set[str]) -> dict:
    """Flat `key = value` lines; '#' starts a comment; keys are long-flag
    names with dashes replaced by underscores."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in allowed:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value)
        except ValueError as exc:
            raise UsageError(
                f"{path}:{lineno}: bad value for {key!r}: {value!r} ({exc})") from exc
    return values


def _merge(flag_value, config: dict, key: str):
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return DEFAULTS.get(key)


def parse_config(argv: list[str], config_file: str | None = None) -> RunConfig:
    """Flags beat the config file, which beats built-in defaults."""
    ns = _build_parser().parse_args(argv)
    sub = ns.subcommand
    allowed = _SUBCOMMAND_KEYS[sub]
    path = getattr(ns, "config", None) or config_file
    config = _read_config_file(path, allowed) if path else {}

    def get(key):
        return _merge(getattr(ns, key, None), config, key)

    schemes_raw = get("scheme") if "scheme" in allowed else None
    try:
        schemes = [TasScheme(s) for s in schemes_raw] if schemes_raw else []
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    swept_raw = get("swept") if "swept" in allowed else None
    try:
        swept = SweptParameter(swept_raw) if swept_raw else None
    except ValueError as exc:
        raise UsageError(f"invalid swept axis {swept_raw!r}") from exc

    bracket = get("bracket_db")
    if len(bracket) != 2:
        raise UsageError(f"bracket_db needs exactly two values, got {bracket!r}")

    cfg = RunConfig(
        subcommand=sub,
        schemes=schemes,
        gamma_b_db=float(get("gamma_b_db")),
        gamma_e_db=float(get("gamma_e_db")),
        antennas=[int(m) for m in get("antennas")],
        method=get("method") or "closed",
        trials=int(get("trials")),
        seed=int(get("seed")),
        threads=int(get("threads")),
        swept=swept,
        from_db=get("from_db") if "from_db" in allowed else None,
        to_db=get("to_db") if "to_db" in allowed else None,
        points=get("points") if "points" in allowed else None,
        normalize_otas=bool(get("normalize_otas")),
        mc_overlay=bool(get("mc_overlay")),
        bracket_db=(float(bracket[0]), float(bracket[1])),
        out=get("out") if "out" in allowed else None,
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if not 0 <= cfg.seed <= _UINT64_MAX:
        raise UsageError(f"seed must be an unsigned 64-bit integer, got {cfg.seed}")
    if cfg.threads < 1:
        raise UsageError(f"threads must be >= 1, got {cfg.threads}")
    for m in cfg.antennas:
        if m < 1:
            raise UsageError(f"-M must be >= 1, got {m}")
    if not (math.isfinite(cfg.gamma_b_db) and math.isfinite(cfg.gamma_e_db)):
        raise UsageError("SNR values must be finite dB numbers")

    if cfg.subcommand == "asc":
        if len(cfg.schemes) != 1:
            raise UsageError("asc needs exactly one --scheme")
        if len(cfg.antennas) != 1:
            raise UsageError("asc takes a single -M")
        scheme = cfg.schemes[0]
        if scheme is TasScheme.OTAS and cfg.method in ("closed", "quad"):
            raise UsageError(f"{cfg.method}-form unavailable for otas"
                             if cfg.method == "closed"
                             else "quadrature unavailable for otas")
        if scheme is TasScheme.RANDOM and cfg.method == "closed":
            raise UsageError("closed-form unavailable for random")
        if cfg.method == "mc" and cfg.trials < 2:
            raise UsageError(f"--trials must be >= 2 for mc, got {cfg.trials}")

    elif cfg.subcommand == "sweep":
        if not cfg.schemes:
            raise UsageError("sweep needs at least one --scheme")
        for name, value in (("--swept", cfg.swept), ("--from-db", cfg.from_db),
                            ("--to-db", cfg.to_db), ("--points", cfg.points)):
            if value is None:
                raise UsageError(f"sweep requires {name}")
        if cfg.points < 2:
            raise UsageError(f"--points must be >= 2, got {cfg.points}")
        if not cfg.from_db < cfg.to_db:
            raise UsageError(
                f"--from-db must be below --to-db, got {cfg.from_db} / {cfg.to_db}")
        needs_mc = (TasScheme.OTAS in cfg.schemes or TasScheme.RANDOM in cfg.schemes
                    or cfg.normalize_otas or cfg.mc_overlay)
        if needs_mc and cfg.trials < 2:
            raise UsageError(f"--trials must be >= 2 when a Monte Carlo path "
                             f"is requested, got {cfg.trials}")

    elif cfg.subcommand == "crossover":
        if len(cfg.antennas) != 1:
            raise UsageError("crossover takes a single -M")
        if cfg.antennas[0] < 2:
            raise UsageError("crossover needs -M >= 2: with one antenna the "
                             "schemes coincide everywhere")
        lo, hi = cfg.bracket_db
        if not lo < hi:
            raise UsageError(f"--bracket-db needs LO < HI, got {lo} {hi}")

    elif cfg.subcommand == "verify":
        if cfg.trials < 2:
            raise UsageError(f"--trials must be >= 2, got {cfg.trials}")


# ----------------------------------------------------------------------------
# CSV emission
# ----------------------------------------------------------------------------

def _format_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit_csv(header, rows, out_path) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_format_field(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------

def cmd_asc(cfg: RunConfig) -> int:
    scheme = cfg.schemes[0]
    scenario = Scenario(db_to_linear(cfg.gamma_b_db), db_to_linear(cfg.gamma_e_db),
                        cfg.antennas[0])
    if cfg.method == "closed":
        est = asc_btas_closed(scenario) if scheme is TasScheme.BTAS \
            else asc_etas_closed(scenario)
    elif cfg.method == "quad":
        est = asc_quadrature(scenario, scheme)
    else:
        est = mc_asc(scenario, scheme, cfg.trials, RngStream(cfg.seed),
                     threads=cfg.threads)
    row = (scheme.value, est.method.value, cfg.gamma_b_db, cfg.gamma_e_db,
           scenario.num_antennas, est.value, est.std_error, est.trials)
    _emit_csv(ASC_CSV_HEADER, [row], cfg.out)
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    fixed = cfg.gamma_e_db if cfg.swept is SweptParameter.GAMMA_B_DB else cfg.gamma_b_db
    spec = SweepSpec(
        swept=cfg.swept, start_db=cfg.from_db, stop_db=cfg.to_db,
        points=cfg.points, fixed_gamma_db=fixed,
        antennas=tuple(cfg.antennas), schemes=tuple(cfg.schemes),
        mc_trials=cfg.trials if (cfg.normalize_otas or cfg.mc_overlay
                                 or TasScheme.OTAS in cfg.schemes
                                 or TasScheme.RANDOM in cfg.schemes) else 0,
        seed=cfg.seed, normalize_to_otas=cfg.normalize_otas,
        mc_overlay=cfg.mc_overlay)
    rows = run_sweep(spec, threads=cfg.threads)
    _emit_csv(SWEEP_CSV_HEADER,
              [(r.swept_value_db, r.gamma_b0_db, r.gamma_e0_db, r.antennas,
                r.scheme, r.method, r.asc, r.std_error, r.trials) for r in rows],
              cfg.out)
    return 0


def cmd_crossover(cfg: RunConfig) -> int:
    result = find_crossover(cfg.gamma_b_db, cfg.antennas[0], cfg.bracket_db)
    row = (result.gamma_b0_db, result.antennas, result.crossover_ratio_db,
           result.residual)
    _emit_csv(CROSSOVER_CSV_HEADER, [row], cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    results = run_verification(trials=cfg.trials, seed=cfg.seed,
                               threads=cfg.threads)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 1


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    commands = {"asc": cmd_asc, "sweep": cmd_sweep,
                "crossover": cmd_crossover, "verify": cmd_verify}
    try:
        return commands[cfg.subcommand](cfg)
    except NoCrossoverError as exc:
        print(f"no crossover: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ConvergenceError, UnsupportedSchemeError,
            DegenerateNormalizationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
