"""Descriptive-statistics vectorization of persistence diagrams.

Per degree: mean, standard deviation, min, max, and quartiles of birth,
death, and lifetime, plus the bar count and total persistence -- 23 values
per degree, degree 0 followed by degree 1.  Infinite deaths are replaced
by the filtration cap before any statistic is computed; an empty diagram
contributes all zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .persistence import PersistenceDiagram

STAT_NAMES = ("mean", "sd", "min", "max", "q25", "q50", "q75")
QUANTITY_NAMES = ("birth", "death", "lifetime")


def feature_schema(drop_stats: tuple[str, ...] = ()) -> list[tuple[int, str]]:
    """Ordered (degree, statistic-name) labels of the feature vector."""
    labels = []
    for degree in (0, 1):
        for quantity in QUANTITY_NAMES:
            for stat in STAT_NAMES:
                name = f"{quantity}_{stat}"
                if name not in drop_stats:
                    labels.append((degree, name))
        if "count" not in drop_stats:
            labels.append((degree, "count"))
        if "total_persistence" not in drop_stats:
            labels.append((degree, "total_persistence"))
    return labels


@dataclass
class FeatureVector:
    values: np.ndarray
    schema: list[tuple[int, str]]

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape[0] != len(self.schema):
            raise ValueError("values and schema lengths differ")

    def as_dict(self) -> dict[str, float]:
        return {f"H{deg}_{name}": float(v) for (deg, name), v in zip(self.schema, self.values)}


def _stats(values: np.ndarray) -> dict[str, float]:
    return {
        "mean": float(np.mean(values)),
        "sd": float(np.std(values, ddof=1)) if values.shape[0] > 1 else 0.0,
        "min": float(np.min(values)),
        "max": float(np.max(values)),
        "q25": float(np.quantile(values, 0.25)),
        "q50": float(np.quantile(values, 0.50)),
        "q75": float(np.quantile(values, 0.75)),
    }


def diagram_features(
    diagrams: list[PersistenceDiagram],
    cap: float,
    drop_stats: tuple[str, ...] = (),
) -> FeatureVector:
    """Feature vector from the degree-0 and degree-1 diagrams.

    ``drop_stats`` removes named statistics (e.g. "death_q75" or "count")
    from both degree blocks, for compatibility with fixed-width downstream
    pipelines expecting a subset.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    by_degree = {d.degree: d for d in diagrams}
    for degree in (0, 1):
        if degree not in by_degree:
            by_degree[degree] = PersistenceDiagram(degree=degree, pairs=np.empty((0, 2)))

    schema = feature_schema(drop_stats)
    values = []
    for degree, name in schema:
        pairs = by_degree[degree].pairs
        if pairs.shape[0] == 0:
            values.append(0.0)
            continue
        births = pairs[:, 0]
        deaths = np.minimum(pairs[:, 1], cap)
        lifetimes = deaths - births
        if name == "count":
            values.append(float(pairs.shape[0]))
        elif name == "total_persistence":
            values.append(float(np.sum(lifetimes)))
        else:
            quantity, stat = name.rsplit("_", 1)
            series = {"birth": births, "death": deaths, "lifetime": lifetimes}[quantity]
            values.append(_stats(series)[stat])
    return FeatureVector(values=np.array(values), schema=schema)
