"""Batch front-end: presets, SNR sweeps, figure-style reproductions.

Verbs:
    presets                      print the channel preset table
    run                          sweep SNR for a channel set and emit CSVs
    reproduce --figure {1,2,3,4} canned sweeps mirroring the reference plots

Configuration comes from an optional JSON file plus command-line flags;
flags win.  Each estimator writes one CSV (columns: snr_db, ber, ci_low,
ci_high, estimator, n_samples) next to a JSON metadata sidecar recording
channel parameters, product-model diagnostics, the seed and the package
version.  Plots (when requested) are rendered from the CSVs only.

Exit codes: 0 success, 2 validation error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .ber import (
    MCConfig,
    SNRConfig,
    asymptotic_ber,
    ber_upper_bound,
    mc_ber,
)
from .dgg_model import (
    PRESET_DESCRIPTIONS,
    PRESETS,
    DoubleGGChannel,
    get_preset,
    make_channel,
)
from .product_sum import DEFAULT_BETA_CAP, DEFAULT_REL_TOL, build_product_model
from .special_numerics import EvaluationError, SpecError

__all__ = ["RunSpec", "list_presets", "main", "run"]

OUTDIR_ENV = "DGG_FSO_OUTDIR"
ESTIMATORS = ("mc", "bound", "asymptotic")


@dataclass
class RunSpec:
    """One batch job: channels, aperture count, sweep, estimators, output."""

    channels: list = field(default_factory=list)  # preset names or param dicts
    n_apertures: int = 0                          # 0: len(channels)
    snr_start_db: float = 10.0
    snr_stop_db: float = 40.0
    snr_step_db: float = 5.0
    estimators: list = field(default_factory=lambda: ["mc", "bound"])
    seed: int = 1234
    n_samples: int = 1_000_000
    batch_size: int = 1_000_000
    confidence: float = 0.99
    rationalization_rel_tol: float = DEFAULT_REL_TOL
    beta_cap: int = DEFAULT_BETA_CAP
    output_dir: str = ""
    label: str = "run"
    plot: bool = False

    def resolve_channels(self) -> list[DoubleGGChannel]:
        out = []
        for entry in self.channels:
            if isinstance(entry, str):
                out.append(get_preset(entry))
            elif isinstance(entry, dict):
                out.append(make_channel(**entry))
            else:
                raise SpecError(f"channel entry must be a preset name or dict, got {entry!r}")
        return out

    def validate(self) -> None:
        if not self.channels:
            raise SpecError("at least one channel is required")
        if not self.estimators:
            raise SpecError("estimator list must not be empty")
        for est in self.estimators:
            if est not in ESTIMATORS:
                raise SpecError(f"unknown estimator {est!r}; valid: {ESTIMATORS}")
        if self.snr_step_db <= 0:
            raise SpecError("snr_step_db must be > 0")
        if self.snr_stop_db < self.snr_start_db:
            raise SpecError("snr_stop_db must be >= snr_start_db")
        n = self.n_apertures or len(self.channels)
        if n != len(self.channels):
            raise SpecError(
                f"n_apertures={n} but {len(self.channels)} channels were given"
            )

    @classmethod
    def from_file(cls, path: str) -> "RunSpec":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def snr_grid(spec: RunSpec) -> list[float]:
    grid = []
    x = spec.snr_start_db
    while x <= spec.snr_stop_db + 1e-9:
        grid.append(round(x, 9))
        x += spec.snr_step_db
    return grid


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return ""
    return repr(float(x))


def run(spec: RunSpec) -> list[Path]:
    """Execute a sweep; returns the paths written."""
    spec.validate()
    channels = spec.resolve_channels()
    n = spec.n_apertures or len(channels)
    outdir = Path(spec.output_dir or os.environ.get(OUTDIR_ENV, "."))
    outdir.mkdir(parents=True, exist_ok=True)

    pm = None
    if "bound" in spec.estimators or "asymptotic" in spec.estimators:
        pm = build_product_model(
            channels,
            rel_tol=spec.rationalization_rel_tol,
            beta_cap=spec.beta_cap,
        )

    grid = snr_grid(spec)
    mccfg = MCConfig(seed=spec.seed, n_samples=spec.n_samples,
                     batch_size=min(spec.batch_size, spec.n_samples),
                     confidence=spec.confidence)

    written: list[Path] = []
    for est in spec.estimators:
        rows = []
        for db in grid:
            snr = SNRConfig.from_db(db)
            if est == "mc":
                pt = mc_ber(channels, snr, mccfg)
                rows.append((db, pt.ber, pt.ci_low, pt.ci_high, est, pt.n_samples))
            elif est == "bound":
                ber = ber_upper_bound(pm, n, snr)
                rows.append((db, ber, math.nan, math.nan, est, 0))
            else:
                ber = asymptotic_ber(pm, n, snr, perturb=True)
                rows.append((db, min(ber, 0.5), math.nan, math.nan, est, 0))
        path = outdir / f"{spec.label}_{est}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["snr_db", "ber", "ci_low", "ci_high", "estimator", "n_samples"])
            for r in rows:
                w.writerow([_fmt(r[0]), _fmt(r[1]), _fmt(r[2]), _fmt(r[3]), r[4], r[5]])
        written.append(path)

    meta = {
        "version": __version__,
        "label": spec.label,
        "n_apertures": n,
        "channels": [ch.describe() for ch in channels],
        "product_model": pm.describe() if pm is not None else None,
        "seed": spec.seed,
        "n_samples": spec.n_samples,
        "confidence": spec.confidence,
        "estimators": list(spec.estimators),
        "snr_grid_db": grid,
    }
    meta_path = outdir / f"{spec.label}_meta.json"
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(meta_path)

    if spec.plot:
        written.append(_plot_from_csvs(outdir, spec.label, [p for p in written if p.suffix == ".csv"]))
    return written


def _plot_from_csvs(outdir: Path, label: str, csv_paths: Sequence[Path]) -> Path:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    for path in csv_paths:
        xs, ys = [], []
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                b = float(row["ber"]) if row["ber"] else math.nan
                if b > 0:
                    xs.append(float(row["snr_db"]))
                    ys.append(b)
        est = path.stem.rsplit("_", 1)[-1]
        style = {"mc": "o-", "bound": "s--", "asymptotic": ":"}.get(est, "-")
        ax.semilogy(xs, ys, style, label=est)
    ax.set_xlabel("average electrical SNR [dB]")
    ax.set_ylabel("average BER")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    out = outdir / f"{label}.png"
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out


def list_presets() -> str:
    """Preset table with the exact published parameters."""
    header = (
        f"{'name':<5} {'description':<45} {'gamma1':>7} {'gamma2':>7} "
        f"{'m1':>5} {'m2':>5} {'omega1':>7} {'omega2':>7} {'p':>3} {'q':>3}"
    )
    lines = [header, "-" * len(header)]
    for name, ch in PRESETS.items():
        lines.append(
            f"{name:<5} {PRESET_DESCRIPTIONS[name]:<45} "
            f"{ch.large_scale.gamma:>7.4f} {ch.small_scale.gamma:>7.4f} "
            f"{ch.large_scale.m:>5.2f} {ch.small_scale.m:>5.2f} "
            f"{ch.large_scale.omega:>7.4f} {ch.small_scale.omega:>7.4f} "
            f"{ch.p:>3d} {ch.q:>3d}"
        )
    return "\n".join(lines)


# canned sweeps mirroring the reference plots: (channel sets, sweep, estimators)
FIGURES = {
    1: {"sets": [(["b"], 1), (["b"] * 2, 2), (["b"] * 3, 3)],
        "snr": (0.0, 70.0, 5.0), "label": "fig1_channel_b_iid"},
    2: {"sets": [(["c"], 1), (["c"] * 2, 2), (["c"] * 3, 3)],
        "snr": (0.0, 60.0, 5.0), "label": "fig2_channel_c_iid"},
    3: {"sets": [(["a", "b"], 2)],
        "snr": (0.0, 65.0, 5.0), "label": "fig3_channels_ab_inid"},
    4: {"sets": [(["c", "d"], 2)],
        "snr": (0.0, 60.0, 5.0), "label": "fig4_channels_cd_inid"},
}


def reproduce(figure: int, base: RunSpec) -> list[Path]:
    if figure not in FIGURES:
        raise SpecError(f"unknown figure {figure}; valid: {sorted(FIGURES)}")
    recipe = FIGURES[figure]
    written: list[Path] = []
    for chans, n in recipe["sets"]:
        estimators = ["mc", "bound"]
        if len(set(chans)) > 1:
            estimators.append("asymptotic")
        sub = dataclasses.replace(
            base,
            channels=list(chans),
            n_apertures=n,
            snr_start_db=recipe["snr"][0],
            snr_stop_db=recipe["snr"][1],
            snr_step_db=base.snr_step_db or recipe["snr"][2],
            estimators=estimators,
            label=f"{recipe['label']}_N{n}",
        )
        written.extend(run(sub))
    return written


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--channels", nargs="+", help="preset names (e.g. b b)")
    p.add_argument("--apertures", type=int, dest="n_apertures")
    p.add_argument("--snr-start", type=float, dest="snr_start_db")
    p.add_argument("--snr-stop", type=float, dest="snr_stop_db")
    p.add_argument("--snr-step", type=float, dest="snr_step_db")
    p.add_argument("--estimators", nargs="+", choices=ESTIMATORS)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, dest="n_samples")
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--confidence", type=float)
    p.add_argument("--rel-tol", type=float, dest="rationalization_rel_tol")
    p.add_argument("--beta-cap", type=int, dest="beta_cap")
    p.add_argument("--output-dir", dest="output_dir")
    p.add_argument("--label")
    p.add_argument("--plot", action="store_true", default=None)


def _spec_from_args(args: argparse.Namespace) -> RunSpec:
    spec = RunSpec.from_file(args.config) if args.config else RunSpec()
    for f in dataclasses.fields(RunSpec):
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(spec, f.name, v)
    return spec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgg-fso",
        description="Double GG turbulence channels: BER sweeps and bounds",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("presets", help="print the channel preset table")

    p_run = sub.add_parser("run", help="sweep SNR and write CSV curves")
    _add_common(p_run)

    p_fig = sub.add_parser("reproduce", help="reproduce a reference figure")
    p_fig.add_argument("--figure", type=int, required=True, choices=sorted(FIGURES))
    _add_common(p_fig)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "presets":
            print(list_presets())
            return 0
        spec = _spec_from_args(args)
        if args.verb == "run":
            paths = run(spec)
        else:
            paths = reproduce(args.figure, spec)
        for p in paths:
            print(p)
        return 0
    except (SpecError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EvaluationError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
