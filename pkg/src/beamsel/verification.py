"""Self-check harness: identities and bound invariants on random channels."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .channel import ChannelParams, generate_beamspace_channel
from .linalg import pinv_fro_norm_sq
from .selection import (decremental_select, decremental_select_naive,
                        leverage_scores, proof_identities, single_step_costs,
                        theorem1_bound)

__all__ = ["VerificationReport", "verify_channel", "run_verification",
           "IDENTITY_RTOL", "BOUND_ATOL", "NAIVE_MAX_BEAMS"]

IDENTITY_RTOL = 1e-9
BOUND_ATOL = 1e-9
NAIVE_MAX_BEAMS = 16


@dataclass
class VerificationReport:
    passed: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        bucket = self.passed if ok else self.failed
        bucket[name] = bucket.get(name, 0) + 1
        if not ok and len(self.failures) < 50:
            self.failures.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return not self.failed

    def lines(self) -> list[str]:
        names = sorted(set(self.passed) | set(self.failed))
        out = []
        for n in names:
            bad = self.failed.get(n, 0)
            total = bad + self.passed.get(n, 0)
            out.append(f"{'PASS' if not bad else 'FAIL'} {n}: {total - bad}/{total}")
        return out


def verify_channel(H, report: VerificationReport, label: str = "",
                   bound_fn: Callable = theorem1_bound) -> None:
    """Run every check on one channel and add the outcomes to ``report``."""
    n_U, n_B = H.shape
    ids = proof_identities(H)
    for name, ok in ids.checks(IDENTITY_RTOL).items():
        report.record(f"identity_{name}", ok, label)

    full = pinv_fro_norm_sq(H)
    run = decremental_select(H, n_U)
    # The greedy trajectory for any K is a prefix of the K = n_U run.
    norms = {n_B: run.final_norm_sq if n_B == n_U else full}
    for i, c in enumerate(run.step_costs):
        norms[n_B - 1 - i] = c
    worst = max(norms[K] - bound_fn(n_B, n_U, K, full) for K in norms)
    report.record("theorem1_bound", worst <= BOUND_ATOL,
                  f"{label} excess {worst:.3e}")

    steps = np.asarray(run.step_costs)
    mono = bool(np.all(np.diff(np.concatenate([[full], steps]))
                       >= -1e-12 * np.abs(steps).max(initial=full)))
    report.record("step_cost_monotone", mono, label)

    if n_B > n_U:
        costs = single_step_costs(H)
        report.record("greedy_first_step_argmin",
                      run.eliminated[0] == int(np.argmin(costs)), label)

    total = float(np.sum(leverage_scores(H).pi))
    report.record("leverage_sum", abs(total - 1.0) <= 1e-10,
                  f"{label} sum {total!r}")

    if n_B <= NAIVE_MAX_BEAMS:
        K = (n_U + n_B) // 2
        fast, naive = decremental_select(H, K), decremental_select_naive(H, K)
        same = (fast.selected == naive.selected and
                abs(fast.final_norm_sq - naive.final_norm_sq)
                <= 1e-8 * naive.final_norm_sq)
        report.record("fast_vs_naive", same, label)


def run_verification(params: ChannelParams, count: int,
                     bound_fn: Callable = theorem1_bound) -> VerificationReport:
    """Verify ``count`` channels drawn as trials ``0..count-1`` of ``params``.

    ``bound_fn`` replaces the bound under test; the harness self-test
    passes a deliberately broken one.
    """
    if params.n_B <= params.n_U:
        raise ValueError("verification needs n_B > n_U")
    report = VerificationReport()
    for t in range(count):
        H = generate_beamspace_channel(params, t)
        verify_channel(H, report, f"trial {t}", bound_fn)
    return report
