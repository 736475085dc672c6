"""Train-on-one, test-on-all success matrix across the six simulators."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from ..rl.policy import RlPolicy, RlSystemPolicy
from ..rl.train import TrainConfig, TrainResult, rl_train
from ..simulator.base import SIM_IDS
from ..simulator.factory import SimulatorArtifacts
from .metrics import success_rate


@dataclass(frozen=True)
class CrossMatrix:
    sim_ids: tuple[str, ...]  # rows: which simulator the system talks to
    system_ids: tuple[str, ...]  # columns: which simulator trained the system
    cells: tuple[tuple[float, ...], ...]
    episodes: int
    seed: int

    def __post_init__(self):
        if len(self.cells) != len(self.sim_ids):
            raise ValueError("one row per simulator required")
        for row in self.cells:
            if len(row) != len(self.system_ids):
                raise ValueError("one cell per system required")
            if any(not 0.0 <= v <= 1.0 for v in row):
                raise ValueError("success rates must lie in [0, 1]")

    def cell(self, sim_id: str, system_id: str) -> float:
        return self.cells[self.sim_ids.index(sim_id)][self.system_ids.index(system_id)]

    def column(self, system_id: str) -> tuple[float, ...]:
        j = self.system_ids.index(system_id)
        return tuple(row[j] for row in self.cells)

    @property
    def column_averages(self) -> dict[str, float]:
        return {
            system_id: sum(self.column(system_id)) / len(self.sim_ids)
            for system_id in self.system_ids
        }

    def to_json(self) -> dict:
        return {
            "sim_ids": list(self.sim_ids),
            "system_ids": list(self.system_ids),
            "cells": [list(row) for row in self.cells],
            "column_averages": {k: round(v, 4) for k, v in self.column_averages.items()},
            "episodes": self.episodes,
            "seed": self.seed,
        }


def _as_system_policy(policy):
    if isinstance(policy, RlPolicy):
        return RlSystemPolicy(policy, epsilon=0.0)
    return policy


def cross_study(
    policies: Mapping[str, object],
    artifacts: SimulatorArtifacts,
    n: int = 200,
    seed: int = 0,
    sim_ids: Sequence[str] = SIM_IDS,
    system_ids: Sequence[str] | None = None,
) -> CrossMatrix:
    """Evaluate every trained system against every simulator.

    Each cell gets its own derived seed, so cells can be computed in any
    order (or in parallel) without changing the results.
    """
    system_ids = tuple(system_ids if system_ids is not None else sim_ids)
    missing = [s for s in system_ids if s not in policies]
    if missing:
        raise ValueError(f"missing trained policies for: {', '.join(missing)}")
    cells = []
    for i, sim_id in enumerate(sim_ids):
        row = []
        for j, trained_on in enumerate(system_ids):
            cell_seed = seed * 1_000_003 + 31 * i + j
            row.append(
                success_rate(
                    sim_id,
                    _as_system_policy(policies[trained_on]),
                    artifacts,
                    episodes=n,
                    seed=cell_seed,
                )
            )
        cells.append(tuple(row))
    return CrossMatrix(tuple(sim_ids), system_ids, tuple(cells), n, seed)


def diagonal_dominance(matrix: CrossMatrix) -> int:
    """How many systems score at least their column mean on their own simulator."""
    count = 0
    for j, system_id in enumerate(matrix.system_ids):
        column = matrix.column(system_id)
        own = column[matrix.sim_ids.index(system_id)]
        others = [v for i, v in enumerate(column) if matrix.sim_ids[i] != system_id]
        count += own >= sum(others) / len(others)
    return count


def group_mean(
    matrix: CrossMatrix, sim_ids: Sequence[str], system_ids: Sequence[str]
) -> float:
    """Mean success over the sub-grid sim_ids x system_ids."""
    values = [matrix.cell(s, p) for p in system_ids for s in sim_ids]
    return sum(values) / len(values)


def train_policy_suite(
    artifacts: SimulatorArtifacts,
    config: TrainConfig = TrainConfig(),
    sim_ids: Sequence[str] = SIM_IDS,
) -> dict[str, TrainResult]:
    """One policy per simulator, all trained with the same config template."""
    return {
        sim_id: rl_train(artifacts, replace(config, sim_id=sim_id))
        for sim_id in sim_ids
    }
