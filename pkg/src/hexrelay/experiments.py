"""Perturbation robustness experiments and the sparsity threshold estimate.

A trial displaces node positions by a fixed distance in uniformly random
directions and then asks whether the network is still connected under the
physical disk criterion (centers within ``2R``).  Paired trials for two
placements consume identical seeds so that probability differences reflect
the placements, not the random draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .placement import Placement
from .scenario import Scenario, generate_scenario

PERTURBATION_FACTOR = 4.0  # displacement = 4 * r


def trial_seed(*parts: int) -> np.random.SeedSequence:
    """Deterministic seed material from integer coordinates of the experiment."""
    return np.random.SeedSequence(tuple(int(p) for p in parts))


def scenario_seed(*parts: int) -> int:
    return int(trial_seed(*parts).generate_state(1, np.uint64)[0] % (2**63))


def perturb(placement: Placement, mode: str, seed) -> np.ndarray:
    """Positions after displacing nodes by 4r in uniform random directions.

    ``partial`` displaces only the pre-deployed gateways; ``global`` displaces
    every node.  Unaffected rows are returned bit-identical.
    """
    if mode not in ("partial", "global"):
        raise ValueError(f"unknown perturbation mode {mode!r}")
    pts = np.array([nd.cart for nd in placement.nodes], dtype=float)
    if mode == "partial":
        moved = np.array([nd.kind == "gateway" for nd in placement.nodes])
    else:
        moved = np.ones(len(placement.nodes), dtype=bool)
    rng = np.random.default_rng(seed)
    # one angle per node regardless of mode, so partial and global trials of
    # the same seed displace the gateways identically
    theta = rng.uniform(0.0, 2.0 * math.pi, size=len(pts))
    amp = PERTURBATION_FACTOR * placement.frame.r
    pts[moved, 0] += amp * np.cos(theta[moved])
    pts[moved, 1] += amp * np.sin(theta[moved])
    return pts


def post_perturbation_connected(positions: np.ndarray, big_radius: float) -> bool:
    """Disk-graph connectivity at threshold 2R over the given positions."""
    n = len(positions)
    if n <= 1:
        return True
    pts = np.asarray(positions, dtype=float)
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    adj = d2 <= (2.0 * big_radius) ** 2
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        u = frontier.pop()
        newly = np.nonzero(adj[u] & ~seen)[0]
        seen[newly] = True
        frontier.extend(int(v) for v in newly)
    return bool(seen.all())


def survival_trials(
    placement: Placement, mode: str, trials: int, master_seed: int
) -> np.ndarray:
    """Per-trial connectivity indicators under repeated perturbation."""
    big_r = placement.frame.lam * placement.frame.r
    out = np.zeros(trials, dtype=bool)
    for t in range(trials):
        pts = perturb(placement, mode, trial_seed(master_seed, t))
        out[t] = post_perturbation_connected(pts, big_r)
    return out


def rf_value(pr_a, pr_b, eta_a, eta_b):
    """Robustness factor: probability gap scaled by the relay-cost ratio."""
    if eta_a == 0:
        return None
    return (pr_a - pr_b) * eta_b / eta_a


@dataclass(frozen=True)
class PerturbationReport:
    mode: str
    trials: int
    pr_egdo: float
    pr_smt: float
    eta_egdo: int
    eta_smt: int
    rf: float | None  # None when eta_egdo == 0 (nothing was placed)


def robustness_factor(
    egdo_placement: Placement,
    smt_placement: Placement,
    mode: str,
    trials: int,
    master_seed: int,
) -> PerturbationReport:
    """Paired perturbation trials for two placements of the same scenario."""
    if trials < 1:
        raise ValueError("at least one trial is required")
    surv_e = survival_trials(egdo_placement, mode, trials, master_seed)
    surv_s = survival_trials(smt_placement, mode, trials, master_seed)
    pr_e = float(surv_e.mean())
    pr_s = float(surv_s.mean())
    return PerturbationReport(
        mode=mode,
        trials=trials,
        pr_egdo=pr_e,
        pr_smt=pr_s,
        eta_egdo=egdo_placement.eta,
        eta_smt=smt_placement.eta,
        rf=rf_value(pr_e, pr_s, egdo_placement.eta, smt_placement.eta),
    )


@dataclass(frozen=True)
class ThresholdEstimate:
    found: bool
    tau: float | None = None
    density: float | None = None
    crossing_index: int | None = None

    @property
    def message(self) -> str:
        if not self.found:
            return "threshold not reached"
        return f"tau = {self.tau:.2f} clusters (normalized density {self.density:.4g})"


def hexagon_area(edge: float) -> float:
    return 1.5 * math.sqrt(3.0) * edge * edge


def threshold_estimate(
    counts,
    mean_rf,
    mean_eta_smt,
    field_area: float,
    big_radius: float,
) -> ThresholdEstimate:
    """Zero crossing of the mean RF curve, linearly interpolated.

    Also reports the normalized density at the crossing: field area divided
    by coverage hexagon area times total node count (clusters plus the
    interpolated baseline relay cost).
    """
    counts = list(counts)
    rf = list(mean_rf)
    eta = list(mean_eta_smt)
    for i in range(len(counts) - 1):
        if rf[i] > 0 >= rf[i + 1]:
            frac = rf[i] / (rf[i] - rf[i + 1])
            tau = counts[i] + frac * (counts[i + 1] - counts[i])
            eta_tau = eta[i] + frac * (eta[i + 1] - eta[i])
            density = field_area / (hexagon_area(big_radius) * (tau + eta_tau))
            return ThresholdEstimate(True, tau, density, i)
    return ThresholdEstimate(False)


def sweep_scenarios(
    field_w: float,
    field_h: float,
    r: float,
    n: int,
    count: int,
    scenarios: int,
    master_seed: int,
) -> list[Scenario]:
    """The deterministic scenario batch for one sweep point."""
    return [
        generate_scenario(
            field_w, field_h, r, n, count, scenario_seed(master_seed, count, idx)
        )
        for idx in range(scenarios)
    ]
