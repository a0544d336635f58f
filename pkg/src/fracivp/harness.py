"""Run configurations, CSV/JSON output and the ``fracivp`` command line.

A run is described by plain ``key=value`` lines::

    # Riccati, alpha = 0.7
    method=compare
    alpha=0.7
    t_end=0.4
    y0=0
    rhs=1,2,-1
    h=0.001
    M=2
    N=5

``rhs`` lists the polynomial coefficients ``c0, c1, ...`` of
``f(y) = c0 + c1 y + ...``. Blank lines and ``#`` comments are ignored.

Exit statuses: 0 success, 2 bad configuration, 3 solver overflow, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

import numpy as np

from fracivp.abm import AbmConfig, solve_pece
from fracivp.diagnostics import derivative_jump, memory_term
from fracivp.gdtm import eval_series, gdtm_coefficients
from fracivp.msgdtm import sample, solve_msgdtm
from fracivp.problem import FractionalIVP, PolynomialRHS, SolverOverflowError, make_uniform_grid

__all__ = [
    "METHODS",
    "PRESETS",
    "ConfigError",
    "RunConfig",
    "RunOutput",
    "parse_config",
    "execute",
    "run",
    "main",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_OVERFLOW",
    "EXIT_IO",
]

METHODS = ("abm", "gdtm", "msgdtm", "compare")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_OVERFLOW = 3
EXIT_IO = 4

DEFAULT_SERIES_ORDER = 5
DEFAULT_GDTM_SAMPLES = 401
SAMPLES_PER_PIECE = 10
# relative to the sub-interval width
JUMP_PROBE_FRACTION = 1e-3


class ConfigError(ValueError):
    """A configuration failed to parse or validate.

    ``violations`` holds one message per problem, prefixed with its location.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class RunConfig:
    method: str
    alpha: float
    t_end: float
    rhs: tuple[float, ...]
    t0: float = 0.0
    y0: float = 0.0
    h: float | None = None
    n_steps: int | None = None
    M: int | None = None
    N: int = DEFAULT_SERIES_ORDER
    samples: int | None = None
    corrector_iterations: int = 1
    output: str | None = None

    @property
    def ivp(self) -> FractionalIVP:
        return FractionalIVP(
            alpha=self.alpha, t0=self.t0, y0=self.y0, rhs=PolynomialRHS(self.rhs), t_end=self.t_end
        )

    def abm_config(self) -> AbmConfig:
        return AbmConfig.covering(
            self.ivp, h=self.h, n_steps=self.n_steps, corrector_iterations=self.corrector_iterations
        )

    def to_text(self) -> str:
        """Serialize to ``key=value`` lines that :func:`parse_config` reads back."""
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            if f.name == "rhs":
                value = ",".join(repr(float(c)) for c in value)
            elif isinstance(value, float):
                value = repr(value)
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"


_FLOAT_KEYS = {"alpha", "t0", "t_end", "y0", "h"}
_INT_KEYS = {"n_steps", "M", "N", "samples", "corrector_iterations"}
_KEYS = {f.name for f in fields(RunConfig)}
_REQUIRED = ("method", "alpha", "t_end", "rhs")


def _read_lines(text: str, source: str = "line") -> tuple[dict[str, tuple[str, str]], list[str]]:
    raw: dict[str, tuple[str, str]] = {}
    errors = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source} {lineno}"
        if "=" not in line:
            errors.append(f"{where}: expected key=value, got {line!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            errors.append(f"{where}: unknown key {key!r}")
        elif key in raw:
            errors.append(f"{where}: duplicate key {key!r}")
        else:
            raw[key] = (value, where)
    return raw, errors


def _validate(raw: dict[str, tuple[str, str]], errors: list[str]) -> RunConfig:
    values: dict = {}
    for key in _REQUIRED:
        if key not in raw:
            errors.append(f"missing required key {key!r}" if key != "rhs" else "rhs coefficients required")

    for key, (text, where) in raw.items():
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(text)
                if not math.isfinite(values[key]):
                    raise ValueError
            elif key in _INT_KEYS:
                values[key] = int(text)
            elif key == "rhs":
                parts = text.replace(",", " ").split()
                if not parts:
                    errors.append(f"{where}: rhs coefficients required")
                    continue
                values[key] = tuple(float(p) for p in parts)
                if not all(math.isfinite(c) for c in values[key]):
                    raise ValueError
            elif key == "method":
                if text not in METHODS:
                    errors.append(f"{where}: method must be one of {', '.join(METHODS)}, got {text!r}")
                    continue
                values[key] = text
            else:
                values[key] = text or None
        except ValueError:
            errors.append(f"{where}: invalid value {text!r} for {key}")

    def at(key: str) -> str:
        return raw[key][1] if key in raw else "config"

    alpha = values.get("alpha")
    if alpha is not None and not 0.0 < alpha <= 1.0:
        errors.append(f"{at('alpha')}: alpha out of (0,1]")
    t0 = values.get("t0", 0.0)
    if "t_end" in values and not values["t_end"] > t0:
        errors.append(f"{at('t_end')}: t_end must exceed t0")
    if "h" in values and not values["h"] > 0.0:
        errors.append(f"{at('h')}: h must be positive")
    for key in ("n_steps", "M", "N", "corrector_iterations"):
        if key in values and values[key] < 1:
            errors.append(f"{at(key)}: {key} must be >= 1")
    if "samples" in values and values["samples"] < 2:
        errors.append(f"{at('samples')}: samples must be >= 2")

    method = values.get("method")
    if method in ("abm", "compare") and ("h" in values) == ("n_steps" in values):
        errors.append(f"{at('method')}: exactly one of h / n_steps must be given for {method}")
    if method in ("msgdtm", "compare") and "M" not in values:
        errors.append(f"{at('method')}: M (sub-interval count) required for {method}")

    if errors:
        raise ConfigError(errors)
    config = RunConfig(**values)
    if method in ("abm", "compare"):
        try:
            config.abm_config()
        except ValueError as err:
            raise ConfigError([f"{at('h')}: {err}"]) from None
    return config


def parse_config(text: str, overrides: dict[str, str] | None = None) -> RunConfig:
    """Parse ``key=value`` text into a validated :class:`RunConfig`.

    ``overrides`` (e.g. from command-line flags) replace keys from ``text``.
    Raises :class:`ConfigError` listing every violation found.
    """
    raw, errors = _read_lines(text)
    for key, value in (overrides or {}).items():
        if key not in _KEYS:
            errors.append(f"--{key}: unknown key {key!r}")
        else:
            raw[key] = (str(value), f"--{key.replace('_', '-')}")
    return _validate(raw, errors)


PRESETS: dict[str, str] = {
    "riccati-fig1": (
        "method=compare\nalpha=0.7\nt0=0\nt_end=0.4\ny0=0\nrhs=1,2,-1\nh=0.001\nM=2\nN=5\n"
    ),
    "riccati-fig2": (
        "method=compare\nalpha=0.7\nt0=0\nt_end=3\ny0=0\nrhs=1,2,-1\nh=0.01\nM=300\nN=5\n"
    ),
}


@dataclass
class RunOutput:
    header: tuple[str, ...]
    columns: tuple[np.ndarray, ...]
    summary: dict | None = None

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in zip(*self.columns):
            writer.writerow(format(float(v), ".12g") for v in row)
        return buf.getvalue()


def _series_grid(config: RunConfig) -> np.ndarray:
    if config.samples is not None:
        n = config.samples
    elif config.method == "msgdtm":
        n = SAMPLES_PER_PIECE * config.M + 1
    else:
        n = DEFAULT_GDTM_SAMPLES
    return make_uniform_grid(config.t0, config.t_end, n - 1)


def _compare_summary(config: RunConfig, traj, pw, diff: np.ndarray) -> dict:
    ivp = config.ivp
    bp = pw.breakpoints
    first = traj.nodes <= bp[1]
    width = bp[1] - bp[0]
    eps = JUMP_PROBE_FRACTION * width
    memory = [memory_term(traj, k, ivp.alpha, ivp.rhs, breakpoints=bp).as_dict() for k in range(1, len(pw))]
    jumps = []
    for i in range(1, len(pw)):
        probe = derivative_jump(pw, i, eps)
        jumps.append(
            {"i": i, "t": float(bp[i]), "eps": eps, "left_slope": probe.left_slope, "right_slope": probe.right_slope}
        )
    return {
        "config": asdict(config),
        "first_interval_max_deviation": float(diff[first].max()),
        "endpoint_deviation": float(diff[-1]),
        "max_deviation": float(diff.max()),
        "memory_terms": memory,
        "derivative_jumps": jumps,
    }


def execute(config: RunConfig) -> RunOutput:
    """Run the solver(s) named by ``config.method`` and collect the output columns.

    Raises :class:`~fracivp.problem.SolverOverflowError` on blow-up.
    """
    ivp = config.ivp
    if config.method == "abm":
        traj = solve_pece(ivp, config.abm_config())
        return RunOutput(("t", "y"), (traj.nodes, traj.values))
    if config.method == "gdtm":
        t = _series_grid(config)
        return RunOutput(("t", "y"), (t, eval_series(gdtm_coefficients(ivp, config.N), t)))
    if config.method == "msgdtm":
        t = _series_grid(config)
        return RunOutput(("t", "y"), (t, sample(solve_msgdtm(ivp, config.M, config.N), t)))

    traj = solve_pece(ivp, config.abm_config())
    pw = solve_msgdtm(ivp, config.M, config.N)
    y_ms = sample(pw, traj.nodes)
    diff = np.abs(traj.values - y_ms)
    return RunOutput(
        ("t", "y_abm", "y_msgdtm", "abs_diff"),
        (traj.nodes, traj.values, y_ms, diff),
        _compare_summary(config, traj, pw, diff),
    )


def summary_path(output: str | Path) -> Path:
    output = Path(output)
    return output.with_name(output.stem + ".summary.json")


def run(config: RunConfig, *, summary: str | Path | None = None, stdout=None) -> int:
    """Execute ``config`` and write its CSV (and summary, in compare mode).

    Without ``config.output`` the CSV goes to ``stdout``. The summary defaults
    to ``<output stem>.summary.json`` next to the CSV. Returns an exit status.
    """
    stdout = sys.stdout if stdout is None else stdout
    try:
        result = execute(config)
    except SolverOverflowError as err:
        print(f"fracivp: solver overflow: {err}", file=sys.stderr)
        return EXIT_OVERFLOW
    try:
        text = result.csv_text()
        if config.output is None:
            stdout.write(text)
        else:
            Path(config.output).write_text(text, newline="\n")
        if result.summary is not None:
            target = summary if summary is not None else (
                summary_path(config.output) if config.output is not None else None
            )
            if target is not None:
                Path(target).write_text(json.dumps(result.summary, indent=2) + "\n", newline="\n")
    except OSError as err:
        print(f"fracivp: cannot write output: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


_FLAG_KEYS = (
    ("alpha", float),
    ("t0", float),
    ("t_end", float),
    ("y0", float),
    ("rhs", str),
    ("h", float),
    ("n_steps", int),
    ("M", int),
    ("N", int),
    ("samples", int),
    ("corrector_iterations", int),
)


def _add_problem_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="key=value config file")
    for key, _ in _FLAG_KEYS:
        flag = "--" + key.replace("_", "-")
        # values stay strings here; parse_config does the validation
        parser.add_argument(flag, dest=key)
    parser.add_argument("--output", "-o", help="CSV output path (default: stdout)")
    parser.add_argument("--summary", help="summary path for compare runs")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracivp",
        description="Fractional ABM / GDTM / MSGDTM solvers for Caputo initial value problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a single method")
    solve.add_argument("--method", choices=METHODS)
    _add_problem_flags(solve)

    compare = sub.add_parser("compare", help="ABM vs MSGDTM with diagnostics")
    _add_problem_flags(compare)

    preset = sub.add_parser("preset", help="run a built-in experiment")
    preset.add_argument("name", nargs="?", choices=sorted(PRESETS))
    preset.add_argument("--list", action="store_true", help="list presets and exit")
    preset.add_argument("--output", "-o")
    preset.add_argument("--summary")
    return parser


def _overrides(args: argparse.Namespace, keys: Iterable[str]) -> dict[str, str]:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    try:
        if args.command == "preset":
            if args.list or args.name is None:
                for name, text in PRESETS.items():
                    print(f"{name}: {' '.join(text.split())}")
                return EXIT_OK
            text = PRESETS[args.name]
            overrides = _overrides(args, ["output"])
        else:
            text = args.config.read_text() if args.config is not None else ""
            overrides = _overrides(args, [k for k, _ in _FLAG_KEYS] + ["output"])
            if args.command == "compare":
                overrides["method"] = "compare"
            elif args.method is not None:
                overrides["method"] = args.method
        config = parse_config(text, overrides)
    except ConfigError as err:
        for violation in err.violations:
            print(f"fracivp: {violation}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"fracivp: cannot read config: {err}", file=sys.stderr)
        return EXIT_IO

    return run(config, summary=args.summary)


if __name__ == "__main__":
    sys.exit(main())
