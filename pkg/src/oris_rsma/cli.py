"""``simulate`` command: run the SNR sweep and write the plot data as CSV.

The config file is JSON with ScenarioConfig field names as keys. A
manifest written by a previous run is also accepted; its ``config`` echo is
used. Command-line flags override file values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .config import ConfigError, ScenarioConfig
from .harness import SweepResult, sweep

FIG2_NAME = "fig2_sumrate.csv"
FIG3_NAME = "fig3_allocation.csv"
MANIFEST_NAME = "manifest.json"
FIG2_HEADER = "snr_db,sr_rsma,sr_ris_rsma,sr_oris_rsma,se_rsma,se_ris_rsma,se_oris_rsma"
FIG3_HEADER = "snr_db,mean_n_good,mean_n_worst,mean_alpha_c,infeasible_count"


@dataclass(frozen=True)
class RunManifest:
    config: ScenarioConfig
    artifact_version: str
    wall_clock_seconds: float
    infeasible_counts: dict[float, int]

    def to_dict(self) -> dict:
        return {
            "artifact_version": self.artifact_version,
            "config": self.config.to_dict(),
            "wall_clock_seconds": self.wall_clock_seconds,
            "infeasible_counts": [{"snr_db": s, "count": c}
                                  for s, c in self.infeasible_counts.items()],
        }


def _read_config_file(path: str | os.PathLike) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    try:
        values = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"malformed JSON in {path}: {exc}") from None
    if not isinstance(values, dict):
        raise ConfigError("config", f"{path} must hold a JSON object")
    if "config" in values and "artifact_version" in values:
        values = values["config"]
    return values


def snr_grid(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0:
        raise ConfigError("snr_step", "must be > 0")
    if hi < lo:
        raise ConfigError("snr_max", "must be >= snr_min")
    n = int(round((hi - lo) / step))
    return [lo + i * step for i in range(n + 1) if lo + i * step <= hi + 1e-9]


def load_config(path: str | os.PathLike | None = None, overrides: dict | None = None,
                snr_range: tuple[float | None, float | None, float | None] = (None, None, None)
                ) -> ScenarioConfig:
    """Merge defaults, file values and overrides into a validated config.

    ``snr_range`` is ``(min, max, step)``; any given entry rebuilds the SNR
    grid, the missing ones taken from the grid already in effect.
    """
    values = _read_config_file(path) if path is not None else {}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})

    if any(v is not None for v in snr_range):
        current = values.get("snr_grid_db", ScenarioConfig().snr_grid_db)
        try:
            current = [float(v) for v in current]
        except (TypeError, ValueError):
            raise ConfigError("snr_grid_db", "expected a list of numbers") from None
        lo, hi, step = snr_range
        lo = current[0] if lo is None else lo
        hi = current[-1] if hi is None else hi
        if step is None:
            step = current[1] - current[0] if len(current) > 1 else 1.0
        values["snr_grid_db"] = snr_grid(lo, hi, step)

    try:
        return ScenarioConfig.from_dict(values)
    except TypeError as exc:
        raise ConfigError("config", str(exc)) from None


def _fmt(x) -> str:
    return f"{float(x):.6g}"


def fig2_rows(result: SweepResult) -> list[str]:
    m, se = result.mean, result.se
    return [",".join(_fmt(v) for v in (
        snr, m["sr_rsma"][i], m["sr_ris_rsma"][i], m["sr_oris_rsma"][i],
        se["sr_rsma"][i], se["sr_ris_rsma"][i], se["sr_oris_rsma"][i]))
        for i, snr in enumerate(result.snr_db)]


def fig3_rows(result: SweepResult) -> list[str]:
    m = result.mean
    return [",".join([_fmt(snr), _fmt(m["n_good"][i]), _fmt(m["n_worst"][i]),
                      _fmt(m["alpha_c"][i]), str(int(result.infeasible[i]))])
            for i, snr in enumerate(result.snr_db)]


def _write_atomic(files: dict[Path, str]):
    """Stage every file as a temporary sibling, then rename them all into place.

    If anything fails, the staged files and any outputs already renamed are
    removed, so a failed run never leaves a mixed set behind.
    """
    staged, placed = [], []
    try:
        for target, text in files.items():
            fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
            staged.append((tmp, target))
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
        for tmp, target in staged:
            os.replace(tmp, target)
            placed.append(target)
    except BaseException:
        for path in [tmp for tmp, _ in staged] + placed:
            if os.path.exists(path):
                os.unlink(path)
        raise


def run_and_emit(config: ScenarioConfig, out_dir: str | os.PathLike,
                 jobs: int | None = None) -> RunManifest:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    result = sweep(config, jobs=jobs)
    elapsed = time.perf_counter() - start

    manifest = RunManifest(
        config=config,
        artifact_version=__version__,
        wall_clock_seconds=elapsed,
        infeasible_counts={float(s): int(c) for s, c in zip(result.snr_db, result.infeasible)},
    )
    _write_atomic({
        out / FIG2_NAME: "\n".join([FIG2_HEADER, *fig2_rows(result)]) + "\n",
        out / FIG3_NAME: "\n".join([FIG3_HEADER, *fig3_rows(result)]) + "\n",
        out / MANIFEST_NAME: json.dumps(manifest.to_dict(), indent=2) + "\n",
    })
    return manifest


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="simulate",
        description="Monte Carlo sum-rate sweep of RSMA, RIS-RSMA and ORIS-RSMA.")
    p.add_argument("--config", help="JSON file of ScenarioConfig fields (or a manifest.json)")
    p.add_argument("--out-dir", default="results", help="output directory (default: results)")
    p.add_argument("--snr-min", type=float)
    p.add_argument("--snr-max", type=float)
    p.add_argument("--snr-step", type=float)
    p.add_argument("--trials", type=int, dest="n_trials")
    p.add_argument("--seed", type=int)
    p.add_argument("--n-elements", type=int)
    p.add_argument("--element-threshold", type=int)
    p.add_argument("--target-rate", type=float, dest="target_common_rate")
    p.add_argument("--total-power", type=float)
    p.add_argument("--pathloss-exponent", type=float)
    p.add_argument("--power-tolerance", type=float)
    p.add_argument("--jobs", type=int,
                   help="worker processes (default: $ORIS_RSMA_JOBS or 1)")
    return p


OVERRIDE_KEYS = ("n_trials", "seed", "n_elements", "element_threshold",
                 "target_common_rate", "total_power", "pathloss_exponent", "power_tolerance")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(
            args.config,
            overrides={k: getattr(args, k) for k in OVERRIDE_KEYS},
            snr_range=(args.snr_min, args.snr_max, args.snr_step))
    except ConfigError as exc:
        print(f"simulate: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run_and_emit(config, args.out_dir, jobs=args.jobs)
    except OSError as exc:
        print(f"simulate: I/O error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return 2
    total = sum(manifest.infeasible_counts.values())
    print(f"wrote {FIG2_NAME}, {FIG3_NAME}, {MANIFEST_NAME} to {args.out_dir} "
          f"in {manifest.wall_clock_seconds:.1f}s ({total} infeasible trials)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
