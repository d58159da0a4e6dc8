"""Monte Carlo sum-rate sweeps over random beamspace channels.

Each trial draws one channel from its own RNG substreams (see
:mod:`beamsel.channel`), so results depend only on ``(seed, trial)`` and
not on the number of worker processes.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .channel import ChannelParams, generate_beamspace_channel
from .linalg import pinv_fro_norm_sq
from .precoding import db_to_linear, sum_rate
from .selection import (decremental_select, preselect, rate_lower_bound,
                        theorem1_bound)

__all__ = ["SweepConfig", "TrialResult", "SweepResult", "run_trial",
           "run_sweep", "CSV_COLUMNS", "DEFAULT_SNR_DB"]

DEFAULT_SNR_DB = tuple(float(x) for x in range(-10, 31, 5))

CSV_COLUMNS = ("K", "snr_db", "r_full_mean", "r_full_std", "r_s_mean",
               "r_s_std", "r_s_pre_mean", "bound_eq9_rate", "bound_eq17_mean",
               "n_c_mean", "epsilon_mean")

# Spawn-key offset for pre-selection streams; keeps them apart from user streams.
_PRESELECT_STREAM = 2**32


@dataclass(frozen=True)
class SweepConfig:
    params: ChannelParams
    K_values: tuple = (32, 64)
    snr_db: tuple = DEFAULT_SNR_DB
    trials: int = 100
    preselect_mode: str = "top"
    oversample: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.K_values:
            raise ValueError("at least one K is required")
        for K in self.K_values:
            if not self.params.n_U <= K <= self.params.n_B:
                raise ValueError(
                    f"K = {K} outside [{self.params.n_U}, {self.params.n_B}]")
        if not self.snr_db:
            raise ValueError("at least one SNR point is required")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        d = dict(d)
        params = d.pop("params", None)
        if isinstance(params, dict):
            params = ChannelParams(**params)
        for key in ("K_values", "snr_db"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(params=params, **d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["K_values"] = list(self.K_values)
        d["snr_db"] = list(self.snr_db)
        return d


@dataclass(frozen=True)
class TrialResult:
    """Per-trial quantities; rate arrays are indexed ``[K, snr]``."""

    trial: int
    full_norm_sq: float
    norm_s: np.ndarray
    norm_pre: np.ndarray
    candidate_norm_sq: np.ndarray
    n_c: np.ndarray
    r_full: np.ndarray
    r_s: np.ndarray
    r_s_pre: np.ndarray
    bound_eq9: np.ndarray
    bound_eq17: np.ndarray

    @property
    def epsilon(self) -> np.ndarray:
        """Relative excess ``(||H_c^+||^2 - ||H^+||^2) / ||H^+||^2`` per K."""
        return (self.candidate_norm_sq - self.full_norm_sq) / self.full_norm_sq


def run_trial(config: SweepConfig, trial: int) -> TrialResult:
    p = config.params
    H = generate_beamspace_channel(p, trial)
    full = pinv_fro_norm_sq(H)
    snr = db_to_linear(config.snr_db)
    nK, nS = len(config.K_values), snr.size
    norm_s, norm_pre, cand, n_c = (np.empty(nK) for _ in range(4))
    r_s, r_pre, b9, b17 = (np.empty((nK, nS)) for _ in range(4))
    for a, K in enumerate(config.K_values):
        norm_s[a] = decremental_select(H, K).final_norm_sq
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(
            p.seed, spawn_key=(trial, _PRESELECT_STREAM + K))))
        pre = preselect(H, K, config.preselect_mode, config.oversample, rng)
        cand[a] = pinv_fro_norm_sq(pre.H_c)
        n_c[a] = pre.n_c
        norm_pre[a] = decremental_select(pre.H_c, K).final_norm_sq
        r_s[a] = sum_rate(norm_s[a], snr, 1.0, p.n_U)
        r_pre[a] = sum_rate(norm_pre[a], snr, 1.0, p.n_U)
        b9[a] = sum_rate(theorem1_bound(p.n_B, p.n_U, K, full), snr, 1.0, p.n_U)
        b17[a] = rate_lower_bound(pre.n_c, p.n_U, K, cand[a], snr, 1.0)
    r_full = np.broadcast_to(sum_rate(full, snr, 1.0, p.n_U), (nK, nS)).copy()
    return TrialResult(trial, full, norm_s, norm_pre, cand, n_c,
                       r_full, r_s, r_pre, b9, b17)


def _trial_violations(t: TrialResult, atol: float = 1e-9) -> list[str]:
    out = []
    if np.any(t.bound_eq17 > t.r_s_pre + atol):
        out.append(f"trial {t.trial}: candidate-set rate bound exceeds R_s on H_c")
    if np.any(t.r_s_pre > t.r_full + atol):
        out.append(f"trial {t.trial}: R_s on H_c exceeds R_full")
    if np.any(t.r_s > t.r_full + atol):
        out.append(f"trial {t.trial}: R_s exceeds R_full")
    if np.any(t.bound_eq9 > t.r_s + atol):
        out.append(f"trial {t.trial}: full-channel rate bound exceeds R_s")
    return out


@dataclass
class SweepResult:
    config: SweepConfig
    trials: list = field(repr=False)

    def _stack(self, name: str) -> np.ndarray:
        return np.stack([getattr(t, name) for t in self.trials])

    def cells(self) -> list[dict]:
        """One summary dict per ``(K, snr_db)`` cell, ``K`` major."""
        r_full, r_s = self._stack("r_full"), self._stack("r_s")
        r_pre, b9 = self._stack("r_s_pre"), self._stack("bound_eq9")
        b17, n_c = self._stack("bound_eq17"), self._stack("n_c")
        eps = self._stack("epsilon")
        rows = []
        for a, K in enumerate(self.config.K_values):
            for s, snr in enumerate(self.config.snr_db):
                rows.append({
                    "K": int(K),
                    "snr_db": float(snr),
                    "r_full_mean": float(np.mean(r_full[:, a, s])),
                    "r_full_std": float(np.std(r_full[:, a, s])),
                    "r_s_mean": float(np.mean(r_s[:, a, s])),
                    "r_s_std": float(np.std(r_s[:, a, s])),
                    "r_s_pre_mean": float(np.mean(r_pre[:, a, s])),
                    "r_s_pre_std": float(np.std(r_pre[:, a, s])),
                    "bound_eq9_rate": float(np.mean(b9[:, a, s])),
                    "bound_eq17_mean": float(np.mean(b17[:, a, s])),
                    "bound_eq17_std": float(np.std(b17[:, a, s])),
                    "n_c_mean": float(np.mean(n_c[:, a])),
                    "epsilon_mean": float(np.mean(eps[:, a])),
                })
        return rows

    def violations(self) -> list[str]:
        """Per-trial and per-cell ordering violations (empty when all hold)."""
        out = [v for t in self.trials for v in _trial_violations(t)]
        for c in self.cells():
            if c["r_s_mean"] > c["r_full_mean"] + 1e-9:
                out.append(f"cell K={c['K']} snr={c['snr_db']}: mean R_s > mean R_full")
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for c in self.cells():
            w.writerow([c["K"]] + [repr(c[k]) for k in CSV_COLUMNS[1:]])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"config": self.config.to_dict(),
                           "cells": self.cells()}, indent=2) + "\n"

    def write(self, path, fmt: str = "csv") -> None:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        Path(path).write_text(text)


def _run_trial_args(args):
    return run_trial(*args)


def run_sweep(config: SweepConfig) -> SweepResult:
    """Run all trials, in parallel when ``config.workers > 1``."""
    jobs = [(replace(config, workers=1), t) for t in range(config.trials)]
    if config.workers == 1:
        trials = [_run_trial_args(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            trials = list(ex.map(_run_trial_args, jobs, chunksize=4))
    return SweepResult(config, trials)
