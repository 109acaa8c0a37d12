"""File formats: headerless point CSV, diagram JSON, feature CSV, OBJ
vertex ingestion, and plot-data emission."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .features import FeatureVector
from .grid import as_cloud
from .persistence import PersistenceDiagram

SCHEMA_VERSION = 1


def load_points_csv(path) -> np.ndarray:
    """Headerless CSV, one point per row; dimension from column count."""
    pts = np.loadtxt(path, delimiter=",", ndmin=2)
    return as_cloud(pts)


def save_points_csv(path, points) -> None:
    pts = as_cloud(points)
    np.savetxt(path, pts, delimiter=",", fmt="%.17g")


def save_labels_csv(path, labels) -> None:
    np.savetxt(path, np.asarray(labels, dtype=int), fmt="%d")


def diagrams_to_json(diagrams: list[PersistenceDiagram]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "diagrams": [
            {
                "degree": d.degree,
                "pairs": [
                    [b, "inf" if np.isinf(dd) else dd] for b, dd in d.pairs
                ],
            }
            for d in diagrams
        ],
    }


def diagrams_from_json(obj: dict) -> list[PersistenceDiagram]:
    out = []
    for entry in obj["diagrams"]:
        pairs = [
            [float(b), np.inf if d == "inf" else float(d)] for b, d in entry["pairs"]
        ]
        out.append(
            PersistenceDiagram(
                degree=int(entry["degree"]),
                pairs=np.array(pairs, dtype=float).reshape(-1, 2),
            )
        )
    return out


def save_diagrams_json(path, diagrams: list[PersistenceDiagram]) -> None:
    Path(path).write_text(json.dumps(diagrams_to_json(diagrams), indent=2))


def load_diagrams_json(path) -> list[PersistenceDiagram]:
    return diagrams_from_json(json.loads(Path(path).read_text()))


def save_diagram_csv(path, diagrams: list[PersistenceDiagram]) -> None:
    """Plot-ready rows: (degree, birth, death), one bar per row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["degree", "birth", "death"])
        for d in diagrams:
            for b, dd in d.pairs:
                writer.writerow([d.degree, repr(float(b)), "inf" if np.isinf(dd) else repr(float(dd))])


def load_diagram_csv(path) -> list[PersistenceDiagram]:
    by_degree: dict[int, list] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            deg = int(row["degree"])
            death = np.inf if row["death"] == "inf" else float(row["death"])
            by_degree.setdefault(deg, []).append([float(row["birth"]), death])
    return [
        PersistenceDiagram(degree=deg, pairs=np.array(pairs).reshape(-1, 2))
        for deg, pairs in sorted(by_degree.items())
    ]


def save_features_csv(path, fv: FeatureVector) -> None:
    """One header row with the schema labels, one data row of values."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"H{deg}_{name}" for deg, name in fv.schema])
        writer.writerow([repr(float(v)) for v in fv.values])


def read_obj_vertices(
    path,
    sample: int | None = None,
    seed: int | None = None,
    center_unit: bool = False,
) -> np.ndarray:
    """Vertex positions from a Wavefront OBJ file (lines starting 'v ').

    Faces, normals, and textures are ignored.  ``sample`` draws a uniform
    subsample without replacement; ``center_unit`` translates the cloud so
    its bounding box is centered in the unit cube (rescaling uniformly
    first if the box does not fit).
    """
    vertices = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped.startswith("v ") and stripped != "v":
                continue
            fields = stripped.split()
            try:
                coords = [float(x) for x in fields[1:4]]
            except ValueError:
                raise ValueError(f"malformed vertex line {lineno}: {line.rstrip()}")
            if len(coords) != 3:
                raise ValueError(f"malformed vertex line {lineno}: {line.rstrip()}")
            vertices.append(coords)
    if not vertices:
        raise ValueError("no vertex lines found")
    pts = np.array(vertices, dtype=float)

    if sample is not None:
        if sample > pts.shape[0]:
            raise ValueError(
                f"requested {sample} samples from {pts.shape[0]} vertices"
            )
        rng = np.random.default_rng(seed)
        pts = pts[rng.choice(pts.shape[0], size=sample, replace=False)]

    if center_unit:
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = float(np.max(hi - lo))
        mid = (lo + hi) / 2.0
        pts = pts - mid
        if span > 1.0:
            pts = pts / span
        pts = pts + 0.5
    return pts
