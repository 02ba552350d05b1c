"""Scenario definition, generation, and JSON round-trip."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .hcs import HcsFrame


@dataclass(frozen=True)
class Scenario:
    """A field with pre-deployed cluster gateways.

    Distances are meters throughout.  ``r`` is the standard-node radius (the
    cell edge); ``n`` sets the relay coverage hexagon edge to ``(12n+7)*r``.
    """

    field_w: float
    field_h: float
    r: float
    n: int
    clusters: tuple[tuple[float, float], ...]
    seed: int = 0

    def __post_init__(self):
        if self.field_w <= 0 or self.field_h <= 0:
            raise ConfigError("field dimensions must be positive")
        if self.r <= 0:
            raise ConfigError("r must be positive")
        if self.n < 0:
            raise ConfigError("n must be a non-negative integer")
        for x, y in self.clusters:
            if not (0 <= x <= self.field_w and 0 <= y <= self.field_h):
                raise ConfigError(f"cluster ({x}, {y}) outside the field")

    @property
    def big_radius(self) -> float:
        return (12 * self.n + 7) * self.r

    @property
    def area(self) -> float:
        return self.field_w * self.field_h

    def frame(self) -> HcsFrame:
        """Lattice frame anchored at the cluster center of geometry."""
        if self.clusters:
            ox = sum(p[0] for p in self.clusters) / len(self.clusters)
            oy = sum(p[1] for p in self.clusters) / len(self.clusters)
        else:
            ox, oy = self.field_w / 2.0, self.field_h / 2.0
        return HcsFrame((ox, oy), self.r, self.n)

    def to_json_dict(self, meta: dict | None = None) -> dict:
        doc = {
            "field_m": [self.field_w, self.field_h],
            "r_m": self.r,
            "n": self.n,
            "seed": self.seed,
            "clusters": [[x, y] for x, y in self.clusters],
        }
        if meta is not None:
            doc["meta"] = meta
        return doc

    @staticmethod
    def from_json_dict(doc: dict) -> "Scenario":
        try:
            return Scenario(
                field_w=float(doc["field_m"][0]),
                field_h=float(doc["field_m"][1]),
                r=float(doc["r_m"]),
                n=int(doc["n"]),
                clusters=tuple((float(x), float(y)) for x, y in doc["clusters"]),
                seed=int(doc["seed"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed scenario document: {exc}") from exc


def scale_for_big_radius(big_radius: float, r: float) -> int:
    """Solve big_radius = (12n+7)*r for integer n, or fail loudly."""
    ratio = big_radius / r
    n = round((ratio - 7) / 12)
    if n < 0 or abs((12 * n + 7) - ratio) > 1e-9:
        raise ConfigError(
            f"coverage radius {big_radius} is not (12n+7)*r for r={r} "
            f"and non-negative integer n"
        )
    return int(n)


def generate_scenario(
    field_w: float, field_h: float, r: float, n: int, count: int, seed: int
) -> Scenario:
    """Drop ``count`` cluster gateways i.i.d. uniformly over the field."""
    if count < 1:
        raise ConfigError(f"cluster count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    pts = rng.uniform((0.0, 0.0), (field_w, field_h), size=(count, 2))
    return Scenario(
        field_w=field_w,
        field_h=field_h,
        r=r,
        n=n,
        clusters=tuple((float(x), float(y)) for x, y in pts),
        seed=seed,
    )


def write_scenario(path: str, scenario: Scenario, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario.to_json_dict(meta), fh, indent=1)
        fh.write("\n")


def read_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return Scenario.from_json_dict(json.load(fh))
