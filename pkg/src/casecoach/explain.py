"""Perturbation-based local explanation of a model decision at a point.

Draws perturbations inside the per-parameter proximity neighborhoods of the
point, labels each one by whether the model keeps the target decision, and
fits a kernel-weighted ridge regression on normalized feature encodings.
The fitted coefficients are the per-parameter importance weights used to
rank follow-up questions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .decisions import DecisionModel
from .errors import ArgumentError
from .space import (
    CATEGORICAL,
    NUMERIC,
    CaseVector,
    DomainSchema,
    _sample_component,
    distance,
)


@dataclass(frozen=True)
class PerturbationConfig:
    samples: int = 1000
    kernel_width: float = 0.25
    ridge: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.samples < 10:
            raise ArgumentError("perturbation sample count must be at least 10")
        if self.kernel_width <= 0:
            raise ArgumentError("kernel width must be positive")
        if self.ridge < 0:
            raise ArgumentError("ridge regularization must be non-negative")

    def with_seed(self, seed: int) -> "PerturbationConfig":
        return PerturbationConfig(self.samples, self.kernel_width, self.ridge, seed)


@dataclass(frozen=True)
class Explanation:
    point: CaseVector
    target: str
    weights: Mapping[str, float]
    config: PerturbationConfig


def _encode(schema: DomainSchema, z: CaseVector, x0: CaseVector) -> list[float]:
    feats = []
    for p in schema.parameters:
        v = z.get(p.name)
        if p.kind == NUMERIC:
            lo, hi = p.bounds  # type: ignore[misc]
            feats.append((v.mid - lo) / (hi - lo))  # type: ignore[union-attr]
        elif p.kind == CATEGORICAL:
            ref = x0.get(p.name)
            feats.append(1.0 if v.labels & ref.labels else 0.0)  # type: ignore[union-attr]
        else:
            n_levels = len(p.levels)
            mid = (p.level_index(v.lo) + p.level_index(v.hi)) / 2.0  # type: ignore[union-attr]
            feats.append(mid / (n_levels - 1) if n_levels > 1 else 0.0)
    return feats


def explain_local(
    model: DecisionModel,
    x0: CaseVector,
    target: str,
    cfg: PerturbationConfig,
    schema: DomainSchema,
) -> Explanation:
    """Importance weights for the decision ``target`` at the full vector ``x0``."""
    if set(x0.names) != set(schema.names):
        missing = [n for n in schema.names if not x0.has(n)]
        raise ArgumentError(f"explanation point must cover every parameter; missing {missing}")

    rng = random.Random(cfg.seed)
    rows: list[list[float]] = []
    labels: list[float] = []
    kernel: list[float] = []
    for _ in range(cfg.samples):
        comps = []
        for p in schema.parameters:
            v = x0.get(p.name)
            if rng.random() < 0.5:
                v = _sample_component(rng, p, v)
            comps.append((p.name, v))
        z = CaseVector(tuple(comps))
        rows.append(_encode(schema, z, x0))
        labels.append(1.0 if model.classify(z) == target else 0.0)
        d = distance(z, x0, schema)
        kernel.append(math.exp(-(d * d) / (cfg.kernel_width * cfg.kernel_width)))

    n = schema.dim
    X = np.hstack([np.ones((cfg.samples, 1)), np.asarray(rows)])
    y = np.asarray(labels)
    w = np.asarray(kernel)
    penalty = cfg.ridge * np.eye(n + 1)
    penalty[0, 0] = 0.0  # intercept is not penalized
    Xw = X * w[:, None]
    beta = np.linalg.solve(X.T @ Xw + penalty, Xw.T @ y)
    weights = {p.name: float(beta[j + 1]) for j, p in enumerate(schema.parameters)}
    return Explanation(point=x0, target=target, weights=weights, config=cfg)


def rank_parameters_for_questioning(
    explanation: Explanation,
    asked: Iterable[str] = (),
    restrict_to: Iterable[str] | None = None,
) -> list[str]:
    """Candidate parameter names by descending importance; ties break lexicographically."""
    asked = set(asked)
    names = list(explanation.weights) if restrict_to is None else list(restrict_to)
    eligible = [n for n in names if n not in asked]
    return sorted(eligible, key=lambda n: (-abs(explanation.weights.get(n, 0.0)), n))
