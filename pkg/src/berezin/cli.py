"""Command line front end.

    berezin toeplitz --symbol '{"catalog": "modsq"}' --gamma 0
    berezin weyl --beta 0.6 --eta 1 --gamma 0
    berezin comp --beta 0 --eta -1 --gamma 0 --out-svg range.svg
    berezin verify convexity
    berezin rule-dump --gamma 0.5 --quad 8,16

Exit status: 0 success, 1 a verification check failed, 2 invalid
configuration, 3 numerical failure.
"""

import argparse
from dataclasses import asdict, dataclass, field
import json
import os
import sys

import numpy as np

from . import __version__
from .composition import argmax_modulus
from .core import SpaceParams
from .estimators import CompositionBerezin, ToeplitzBerezin, WeylBerezin
from .exceptions import DomainError, NumericError, ResolutionError
from .quadrature import DEFAULT_N_R, DEFAULT_N_THETA, disk_rule
from .ranges import GridSpec, convex_hull, convexity_defect, polar_grid, sample_range
from .symbols import SymbolExpr
from .validation import parse_complex
from .verify import SUITES, run_suite

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
KINDS = ("toeplitz", "weyl", "composition")


class ConfigError(Exception):
    pass


@dataclass
class ExperimentConfig:
    """Resolved experiment settings; echoed into every JSON output."""

    kind: str = "composition"
    gamma: float = 0.0
    beta: complex = 0j
    eta: complex = 1 + 0j
    symbol: dict = field(default_factory=lambda: {"terms": [[1, 0, 1.0, 0.0]]})
    method: str = "quad"
    grid: tuple = (40, 64, 0.95)
    quad: tuple = (DEFAULT_N_R, DEFAULT_N_THETA)
    seed: int = 0
    n_pairs: int = 20000
    outputs: dict = field(default_factory=lambda: {"csv": None, "json": None, "svg": None})

    def validate(self):
        if self.kind not in KINDS:
            raise ConfigError(f"operator kind must be one of {KINDS}, got {self.kind!r}")
        try:
            SpaceParams(self.gamma)
            GridSpec(*self.grid)
            self.estimator()
        except (DomainError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        n_r, n_theta = self.quad
        if int(n_r) != n_r or n_r < 1 or int(n_theta) != n_theta or n_theta < 4:
            raise ConfigError("quad must be n_r >= 1, n_theta >= 4")
        if self.method not in ("quad", "covariant", "matrix"):
            raise ConfigError(f"unknown method {self.method!r}")
        for key, path in self.outputs.items():
            if path is not None:
                parent = os.path.dirname(os.path.abspath(path))
                if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
                    raise ConfigError(f"{key} output path is not writable: {path}")
        return self

    def estimator(self):
        if self.kind == "toeplitz":
            return ToeplitzBerezin(symbol=SymbolExpr.from_json(self.symbol), gamma=self.gamma,
                                   method=self.method, n_r=int(self.quad[0]),
                                   n_theta=int(self.quad[1]))
        cls = WeylBerezin if self.kind == "weyl" else CompositionBerezin
        return cls(beta=self.beta, eta=self.eta, gamma=self.gamma)

    def to_dict(self):
        d = asdict(self)
        d["beta"] = [self.beta.real, self.beta.imag]
        d["eta"] = [self.eta.real, self.eta.imag]
        d["grid"] = list(self.grid)
        d["quad"] = list(self.quad)
        return d


def _complex_field(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"complex value must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    return parse_complex(value)


def load_config(path):
    """Read an :class:`ExperimentConfig` from JSON.

    Keys mirror the dataclass fields; ``beta``/``eta`` may be ``[re, im]``
    or strings, ``operator`` is accepted as an alias for ``kind``.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    raw = dict(raw)
    if "operator" in raw:
        op = raw.pop("operator")
        if isinstance(op, dict):
            raw.update(op)
            raw.setdefault("kind", op.get("kind"))
        else:
            raw["kind"] = op
    cfg = ExperimentConfig()
    known = set(asdict(cfg))
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        for key, value in raw.items():
            if key in ("beta", "eta"):
                value = _complex_field(value)
            elif key in ("grid", "quad"):
                value = tuple(value)
            elif key == "gamma":
                value = float(value)
            elif key == "outputs":
                value = {**cfg.outputs, **value}
            setattr(cfg, key, value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc
    return cfg


# -- argument types ----------------------------------------------------------

def _arg_complex(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _arg_grid(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be nr,na,rmax")
    try:
        return int(parts[0]), int(parts[1]), float(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc


def _arg_quad(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("quad must be nr,ntheta")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad quad {text!r}") from exc


def _arg_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not valid JSON: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="berezin", description="Berezin range experiments.")
    parser.add_argument("--version", action="version", version=f"berezin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def experiment(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--gamma", type=float)
        p.add_argument("--grid", type=_arg_grid, help="nr,na,rmax")
        p.add_argument("--quad", type=_arg_quad, help="nr,ntheta")
        p.add_argument("--seed", type=int)
        p.add_argument("--pairs", type=int, dest="n_pairs")
        p.add_argument("--out-csv")
        p.add_argument("--out-json")
        p.add_argument("--out-svg")
        return p

    p = experiment("toeplitz", "Berezin range of a Toeplitz operator")
    p.add_argument("--symbol", type=_arg_json, help="JSON symbol literal")
    p.add_argument("--method", choices=("quad", "covariant", "matrix"))
    for name, text in (("weyl", "Berezin range of a Weyl-type operator"),
                       ("comp", "Berezin range of a composition operator")):
        p = experiment(name, text)
        p.add_argument("--beta", type=_arg_complex, help="re,im")
        p.add_argument("--eta", type=_arg_complex, help="re,im")

    p = sub.add_parser("verify", help="run named theorem checks")
    p.add_argument("suite", nargs="?", default="all", choices=("all", *SUITES))
    p.add_argument("--out-json")

    p = sub.add_parser("rule-dump", help="print the quadrature rule for dA_gamma")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--quad", type=_arg_quad, default=(DEFAULT_N_R, DEFAULT_N_THETA))
    p.add_argument("--split", type=float, help="split the radial rule at |z| = R")
    p.add_argument("--out-csv")
    p.add_argument("--out-json")
    return parser


def resolve_config(args):
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    kind = {"comp": "composition"}.get(args.command, args.command)
    if args.config and cfg.kind != kind:
        raise ConfigError(f"config describes a {cfg.kind} experiment, not {kind}")
    cfg.kind = kind
    for key in ("gamma", "grid", "quad", "seed", "n_pairs", "symbol", "method", "beta", "eta"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    for key in ("csv", "json", "svg"):
        value = getattr(args, f"out_{key}")
        if value is not None:
            cfg.outputs[key] = value
    return cfg.validate()


# -- outputs -----------------------------------------------------------------

def write_svg(path, values, hull, size=480, margin=40):
    """Static scatter of the values with the hull polygon and an axis box."""
    v = np.asarray(values, dtype=complex)
    lo_x, hi_x, lo_y, hi_y = v.real.min(), v.real.max(), v.imag.min(), v.imag.max()
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    scale = (size - 2 * margin) / span

    def xy(z):
        return size / 2 + (z.real - cx) * scale, size / 2 - (z.imag - cy) * scale

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect x="{margin}" y="{margin}" width="{size - 2 * margin}" '
             f'height="{size - 2 * margin}" fill="none" stroke="#888"/>',
             f'<text x="{margin}" y="{size - margin / 3:.0f}" font-size="11">'
             f'Re [{cx - span / 2:.4g}, {cx + span / 2:.4g}]  '
             f'Im [{cy - span / 2:.4g}, {cy + span / 2:.4g}]</text>']
    if len(hull) >= 2:
        pts = " ".join("%.2f,%.2f" % xy(z) for z in list(hull) + [hull[0]])
        lines.append(f'<polyline points="{pts}" fill="none" stroke="#c33" stroke-width="1"/>')
    for z in v:
        x, y = xy(z)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1.2" fill="#236"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit(payload, path):
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_experiment(cfg):
    est = cfg.estimator()
    grid = GridSpec(*cfg.grid)
    est.fit(polar_grid(grid))
    sample = sample_range(est.berezin_values, grid)
    report = convexity_defect(sample, n_pairs=cfg.n_pairs, seed=cfg.seed)
    ber, where = argmax_modulus(sample.points, sample.values)
    if cfg.outputs.get("csv"):
        sample.to_csv(cfg.outputs["csv"])
    if cfg.outputs.get("svg"):
        write_svg(cfg.outputs["svg"], sample.values, convex_hull(sample.values))
    v = sample.values
    payload = {
        "version": __version__,
        "config": cfg.to_dict(),
        "n_points": len(sample),
        "ber": ber,
        "ber_argmax": [where.real, where.imag],
        "value_bounds": {"re": [float(v.real.min()), float(v.real.max())],
                         "im": [float(v.imag.min()), float(v.imag.max())]},
        "report": report.to_dict(),
    }
    _emit(payload, cfg.outputs.get("json"))
    return EXIT_OK


def cmd_verify(args):
    checks = run_suite(args.suite)
    passed = all(c.passed for c in checks)
    payload = {"version": __version__, "suite": args.suite, "passed": passed,
               "checks": [c.to_dict() for c in checks]}
    _emit(payload, args.out_json)
    for c in checks:
        if not c.passed:
            print(f"berezin: check failed: {c.name}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_CHECK


def cmd_rule_dump(args):
    n_r, n_theta = args.quad
    try:
        rule = disk_rule(n_r, n_theta, args.gamma, split=args.split)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    t, wt = rule.radial.nodes, rule.radial.weights
    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            fh.write("t,r,weight\n")
            for a, b in zip(t, wt):
                fh.write(f"{float(a)!r},{float(np.sqrt(a))!r},{float(b)!r}\n")
    payload = {"version": __version__,
               "config": {"gamma": args.gamma, "quad": [n_r, n_theta], "split": args.split},
               "n_theta": rule.n_theta, "t": t.tolist(), "weights": wt.tolist(),
               "weight_sum": float(wt.sum())}
    _emit(payload, args.out_json)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "rule-dump":
            return cmd_rule_dump(args)
        return cmd_experiment(resolve_config(args))
    except (NumericError, ResolutionError) as exc:
        module = getattr(exc, "module", None)
        where = getattr(exc, "where", None)
        loc = f" in {module}" if module else ""
        loc += f" at {where!r}" if where is not None else ""
        print(f"berezin: numeric failure{loc}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, DomainError, OSError) as exc:
        print(f"berezin: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
