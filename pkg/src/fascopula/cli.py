"""Command-line front end.

Subcommands:
  outage     one analytic outage probability, printed as key=value lines
  sweep      outage curves over one swept variable, CSV output
  simulate   Monte Carlo vs analytic comparison rows, CSV output
  figures    canned parameter sweeps written as CSV files to a directory

SNR-like flags are given in dB and converted as 10^(dB/10); everything
else is linear scale. CSV output uses a header row, '.' decimals, LF line
endings, and scientific notation with 10 significant digits.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 simulation fell
outside the acceptance band of the analytic value.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .analysis import FasConfig, amplitude_threshold, outage_general
from .copulas import CopulaSpec, Family
from .marginals import NakagamiParams
from .montecarlo import simulate_outage

__all__ = ["SweepSpec", "OutageCurve", "build_parser", "main", "entry"]

SWEEP_VARIABLES = ("avg_snr_db", "ports", "dependence_param", "fading_m")

_SWEEP_DEFAULTS = {
    "sweep": "avg_snr_db",
    "start": 0.0,
    "stop": 40.0,
    "step": 1.0,
    "values": None,
    "families": "frank,clayton,gumbel",
    "ports": 6,
    "m": 1.0,
    "mu": 1.0,
    "alpha": 30.0,
    "beta": 30.0,
    "theta": 30.0,
    "snr_db": 20.0,
    "threshold_db": 0.0,
    "trials": 0,
    "seed": 0,
}


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _fmt(x: float) -> str:
    return f"{x:.9e}"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: the swept variable, its values, and the fixed config."""

    sweep: str
    values: tuple
    families: tuple
    ports: int
    m: float
    mu: float
    params: dict
    snr_db: float
    threshold_db: float
    trials: int = 0
    seed: int = 0


@dataclass
class OutageCurve:
    """Rows of (sweep value, per-family analytic p_out, optional MC columns)."""

    header: list
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(_fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "OutageCurve":
        lines = [ln for ln in text.split("\n") if ln]
        curve = cls(header=lines[0].split(","))
        curve.rows = [[float(tok) for tok in ln.split(",")] for ln in lines[1:]]
        return curve


def _family_from_name(name: str) -> Family:
    try:
        return Family(name.strip().lower())
    except ValueError:
        raise ValueError(f"unknown copula family {name!r}") from None


def _param_for(family: Family, params: dict, override=None) -> float:
    if override is not None:
        return override
    return {
        Family.FRANK: params.get("alpha", 30.0),
        Family.CLAYTON: params.get("beta", 30.0),
        Family.GUMBEL: params.get("theta", 30.0),
        Family.INDEPENDENCE: 0.0,
    }[family]


def _point_config(spec: SweepSpec, family: Family, value: float) -> FasConfig:
    ports = spec.ports
    m = spec.m
    snr_db = spec.snr_db
    param_override = None
    if spec.sweep == "avg_snr_db":
        snr_db = value
    elif spec.sweep == "ports":
        ports = int(value)
    elif spec.sweep == "dependence_param":
        param_override = value
    elif spec.sweep == "fading_m":
        m = value
    return FasConfig(
        ports=ports,
        marginal=NakagamiParams(shape=m, spread=spec.mu),
        copula=CopulaSpec(family=family, param=_param_for(family, spec.params, param_override)),
        avg_snr=_db_to_linear(snr_db),
        snr_threshold=_db_to_linear(spec.threshold_db),
    )


def _point_seed(seed: int, row: int, fam_index: int) -> int:
    ss = np.random.SeedSequence([seed & ((1 << 63) - 1), row, fam_index])
    return int(ss.generate_state(1, np.uint64)[0])


def run_sweep(spec: SweepSpec) -> OutageCurve:
    """Evaluate a SweepSpec into an OutageCurve (analytic, plus MC if trials > 0)."""
    header = [spec.sweep] + [f.value for f in spec.families]
    if spec.trials > 0:
        for f in spec.families:
            header += [f"mc_{f.value}", f"ci_{f.value}"]
    curve = OutageCurve(header=header)
    for row_idx, value in enumerate(spec.values):
        row = [float(value)]
        configs = [_point_config(spec, fam, value) for fam in spec.families]
        row += [outage_general(cfg).p_out for cfg in configs]
        if spec.trials > 0:
            for fam_idx, cfg in enumerate(configs):
                res = simulate_outage(cfg, spec.trials, _point_seed(spec.seed, row_idx, fam_idx))
                row += [res.p_hat, res.ci_half_width]
        curve.rows.append(row)
    return curve


def _sim_gate(analytic: float, count: int, trials: int):
    """4-sigma binomial acceptance band with a small-count Poisson floor."""
    sigma_analytic = math.sqrt(analytic * (1.0 - analytic) * trials)
    p_hat = count / trials
    sigma_hat = math.sqrt(p_hat * (1.0 - p_hat) * trials)
    band = max(4.0 * sigma_analytic, 4.0 * sigma_hat, 9.0)
    return abs(count - trials * analytic) <= band


def _values_from_args(sweep, start, stop, step, values_text):
    if values_text is not None:
        if isinstance(values_text, (list, tuple)):
            vals = [float(v) for v in values_text]
        else:
            vals = [float(tok) for tok in str(values_text).replace(" ", "").split(",") if tok]
        if not vals:
            raise ValueError("empty --values list")
    else:
        if step <= 0:
            raise ValueError("--step must be > 0")
        count = int(math.floor((stop - start) / step + 0.5)) + 1
        if count < 1:
            raise ValueError("empty sweep range")
        vals = [start + step * i for i in range(count)]
    if sweep == "ports":
        vals = [int(v) for v in vals]
    return tuple(vals)


def _add_config_flags(p: argparse.ArgumentParser, multi_family: bool):
    if multi_family:
        p.add_argument("--families", default=None,
                       help="comma list among independence,frank,clayton,gumbel "
                            "(default frank,clayton,gumbel)")
    else:
        p.add_argument("--family", default="frank",
                       choices=[f.value for f in Family])
    p.add_argument("--ports", type=int, default=None, help="number of antenna ports K")
    p.add_argument("--m", type=float, default=None, help="Nakagami shape (fading severity)")
    p.add_argument("--mu", type=float, default=None, help="Nakagami spread (mean power)")
    p.add_argument("--alpha", type=float, default=None, help="Frank dependence parameter")
    p.add_argument("--beta", type=float, default=None, help="Clayton dependence parameter")
    p.add_argument("--theta", type=float, default=None, help="Gumbel dependence parameter")
    p.add_argument("--snr-db", type=float, default=None, help="average SNR in dB")
    p.add_argument("--threshold-db", type=float, default=None, help="outage SNR threshold in dB")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fascopula",
        description="Outage probability of a fluid antenna system with "
                    "copula-correlated Nakagami-m fading ports.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    po = sub.add_parser("outage", help="single analytic outage probability")
    _add_config_flags(po, multi_family=False)
    po.add_argument("--out", default=None, help="write the key=value lines here")

    ps = sub.add_parser("sweep", help="outage curves over one variable, as CSV")
    ps.add_argument("--sweep", choices=SWEEP_VARIABLES, default=None)
    ps.add_argument("--start", type=float, default=None)
    ps.add_argument("--stop", type=float, default=None)
    ps.add_argument("--step", type=float, default=None)
    ps.add_argument("--values", default=None, help="explicit comma list of sweep values")
    _add_config_flags(ps, multi_family=True)
    ps.add_argument("--trials", type=int, default=None,
                    help="Monte Carlo trials per point (0 = analytic only)")
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--out", default=None, help="write CSV here instead of stdout")
    ps.add_argument("--config", default=None, help="JSON file with the same keys as the flags")
    ps.add_argument("--quiet", action="store_true")

    pm = sub.add_parser("simulate", help="Monte Carlo vs analytic comparison rows")
    pm.add_argument("--families", default=None)
    pm.add_argument("--ports", type=int, default=None)
    pm.add_argument("--m", type=float, default=None)
    pm.add_argument("--mu", type=float, default=None)
    pm.add_argument("--alpha", type=float, default=None)
    pm.add_argument("--beta", type=float, default=None)
    pm.add_argument("--theta", type=float, default=None)
    pm.add_argument("--snr-db", type=float, default=None)
    pm.add_argument("--threshold-db", type=float, default=None)
    pm.add_argument("--trials", type=int, default=1_000_000)
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--out", default=None)
    pm.add_argument("--quiet", action="store_true")

    pf = sub.add_parser("figures", help="write the built-in figure sweeps as CSV files")
    pf.add_argument("--outdir", default="figures")
    pf.add_argument("--ports-list", default="1,3,6,9")
    pf.add_argument("--params-list", default="5,15,30")
    pf.add_argument("--m-list", default="0.5,1,2,4")
    pf.add_argument("--snr-list", default="10,20,30")
    pf.add_argument("--threshold-db", type=float, default=0.0)
    pf.add_argument("--trials", type=int, default=0)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--quiet", action="store_true")
    return p


def _resolve(args, key, config, fallback):
    cli_value = getattr(args, key, None)
    if cli_value is not None:
        return cli_value
    if config is not None and key in config:
        return config[key]
    return fallback


def _spec_from_args(args, parser) -> SweepSpec:
    config = None
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except OSError as exc:
            parser.error(f"cannot read config file: {exc}")
        except json.JSONDecodeError as exc:
            parser.error(f"config file is not valid JSON: {exc}")
        unknown = set(config) - set(_SWEEP_DEFAULTS)
        if unknown:
            parser.error(f"unknown config keys: {sorted(unknown)}")

    get = lambda key: _resolve(args, key, config, _SWEEP_DEFAULTS[key])
    sweep = get("sweep")
    if sweep not in SWEEP_VARIABLES:
        parser.error(f"unknown sweep variable {sweep!r}")
    try:
        values = _values_from_args(sweep, get("start"), get("stop"), get("step"), get("values"))
        families = tuple(_family_from_name(tok) for tok in str(get("families")).split(","))
        params = {"alpha": get("alpha"), "beta": get("beta"), "theta": get("theta")}
        spec = SweepSpec(
            sweep=sweep,
            values=values,
            families=families,
            ports=int(get("ports")),
            m=float(get("m")),
            mu=float(get("mu")),
            params=params,
            snr_db=float(get("snr_db")),
            threshold_db=float(get("threshold_db")),
            trials=int(get("trials")),
            seed=int(get("seed")),
        )
        # fail early on invalid fixed parameters
        _point_config(spec, spec.families[0], spec.values[0])
    except ValueError as exc:
        parser.error(str(exc))
    return spec


def _write_text(path, text, quiet=False):
    if path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 3
    if not quiet:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_outage(args, parser) -> int:
    family = _family_from_name(args.family)
    params = {
        "alpha": args.alpha if args.alpha is not None else 30.0,
        "beta": args.beta if args.beta is not None else 30.0,
        "theta": args.theta if args.theta is not None else 30.0,
    }
    snr_db = args.snr_db if args.snr_db is not None else 20.0
    threshold_db = args.threshold_db if args.threshold_db is not None else 0.0
    try:
        cfg = FasConfig(
            ports=args.ports if args.ports is not None else 6,
            marginal=NakagamiParams(
                shape=args.m if args.m is not None else 1.0,
                spread=args.mu if args.mu is not None else 1.0,
            ),
            copula=CopulaSpec(family=family, param=_param_for(family, params)),
            avg_snr=_db_to_linear(snr_db),
            snr_threshold=_db_to_linear(threshold_db),
        )
    except ValueError as exc:
        parser.error(str(exc))
    res = outage_general(cfg)
    lines = [
        f"family={family.value}",
        f"param={cfg.copula.param!r}",
        f"ports={cfg.ports}",
        f"m={cfg.port_marginals[0].shape!r}",
        f"mu={cfg.port_marginals[0].spread!r}",
        f"avg_snr_db={snr_db!r}",
        f"threshold_db={threshold_db!r}",
        f"amplitude_threshold={res.amplitude_threshold!r}",
        f"p_out={res.p_out!r}",
    ]
    return _write_text(args.out, "\n".join(lines) + "\n")


def _cmd_sweep(args, parser) -> int:
    spec = _spec_from_args(args, parser)
    try:
        curve = run_sweep(spec)
    except ValueError as exc:
        parser.error(str(exc))
    return _write_text(args.out, curve.to_csv(), args.quiet)


def _cmd_simulate(args, parser) -> int:
    families_text = args.families if args.families is not None else "frank,clayton,gumbel"
    try:
        families = [_family_from_name(tok) for tok in families_text.split(",")]
    except ValueError as exc:
        parser.error(str(exc))
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    params = {
        "alpha": args.alpha if args.alpha is not None else 30.0,
        "beta": args.beta if args.beta is not None else 30.0,
        "theta": args.theta if args.theta is not None else 30.0,
    }
    snr_db = args.snr_db if args.snr_db is not None else 20.0
    threshold_db = args.threshold_db if args.threshold_db is not None else 0.0
    header = [
        "family", "param", "ports", "m", "mu", "avg_snr_db", "threshold_db",
        "trials", "seed", "analytic", "p_hat", "ci_half_width", "abs_diff", "status",
    ]
    lines = [",".join(header)]
    any_fail = False
    for fam_idx, family in enumerate(families):
        try:
            cfg = FasConfig(
                ports=args.ports if args.ports is not None else 6,
                marginal=NakagamiParams(
                    shape=args.m if args.m is not None else 1.0,
                    spread=args.mu if args.mu is not None else 1.0,
                ),
                copula=CopulaSpec(family=family, param=_param_for(family, params)),
                avg_snr=_db_to_linear(snr_db),
                snr_threshold=_db_to_linear(threshold_db),
            )
        except ValueError as exc:
            parser.error(str(exc))
        analytic = outage_general(cfg).p_out
        seed = _point_seed(args.seed, 0, fam_idx)
        res = simulate_outage(cfg, args.trials, seed)
        ok = _sim_gate(analytic, res.outage_count, res.trials)
        any_fail = any_fail or not ok
        lines.append(",".join([
            family.value,
            _fmt(cfg.copula.param),
            str(cfg.ports),
            _fmt(cfg.port_marginals[0].shape),
            _fmt(cfg.port_marginals[0].spread),
            _fmt(snr_db),
            _fmt(threshold_db),
            str(res.trials),
            str(args.seed),
            _fmt(analytic),
            _fmt(res.p_hat),
            _fmt(res.ci_half_width),
            _fmt(abs(res.p_hat - analytic)),
            "pass" if ok else "fail",
        ]))
    rc = _write_text(args.out, "\n".join(lines) + "\n", args.quiet)
    if rc != 0:
        return rc
    return 4 if any_fail else 0


def _figure_specs(args):
    ports_list = [int(v) for v in str(args.ports_list).split(",")]
    params_list = [float(v) for v in str(args.params_list).split(",")]
    m_list = [float(v) for v in str(args.m_list).split(",")]
    snr_list = [float(v) for v in str(args.snr_list).split(",")]
    all_fams = (Family.FRANK, Family.CLAYTON, Family.GUMBEL)
    snr_values = _values_from_args("avg_snr_db", 0.0, 40.0, 1.0, None)
    base = dict(mu=1.0, snr_db=20.0, threshold_db=args.threshold_db,
                trials=args.trials, seed=args.seed, families=all_fams)

    specs = []
    for k in ports_list:
        specs.append((f"fig1_ports{k}.csv", SweepSpec(
            sweep="avg_snr_db", values=snr_values, ports=k, m=1.0,
            params={"alpha": 30.0, "beta": 30.0, "theta": 30.0}, **base)))
    for par in params_list:
        specs.append((f"fig2_param{par:g}.csv", SweepSpec(
            sweep="avg_snr_db", values=snr_values, ports=6, m=1.0,
            params={"alpha": par, "beta": par, "theta": max(par, 1.0)}, **base)))
    for m in m_list:
        specs.append((f"fig3_m{m:g}.csv", SweepSpec(
            sweep="avg_snr_db", values=snr_values, ports=6, m=m,
            params={"alpha": 30.0, "beta": 30.0, "theta": 30.0}, **base)))
    ports_sweep = tuple(range(1, 101))
    for snr in snr_list:
        spec = dict(base)
        spec["snr_db"] = snr
        specs.append((f"fig4_snr{snr:g}db.csv", SweepSpec(
            sweep="ports", values=ports_sweep, ports=6, m=1.0,
            params={"alpha": 30.0, "beta": 30.0, "theta": 30.0}, **spec)))
    dep_values = tuple(float(v) for v in range(1, 51))
    for snr in snr_list:
        spec = dict(base)
        spec["snr_db"] = snr
        specs.append((f"fig5_snr{snr:g}db.csv", SweepSpec(
            sweep="dependence_param", values=dep_values, ports=6, m=1.0,
            params={"alpha": 30.0, "beta": 30.0, "theta": 30.0}, **spec)))
    return specs


def _cmd_figures(args, parser) -> int:
    import os

    try:
        os.makedirs(args.outdir, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {args.outdir}: {exc}", file=sys.stderr)
        return 3
    try:
        for name, spec in _figure_specs(args):
            curve = run_sweep(spec)
            rc = _write_text(os.path.join(args.outdir, name), curve.to_csv(), args.quiet)
            if rc != 0:
                return rc
    except ValueError as exc:
        parser.error(str(exc))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "outage":
        return _cmd_outage(args, parser)
    if args.cmd == "sweep":
        return _cmd_sweep(args, parser)
    if args.cmd == "simulate":
        return _cmd_simulate(args, parser)
    return _cmd_figures(args, parser)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
