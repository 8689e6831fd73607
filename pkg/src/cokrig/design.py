"""Sampling designs: where each variable is observed and where ``Y1`` is predicted."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DesignError, ParameterError


def _as_site_tuple(name, values):
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise DesignError(f"{name} must be a list of numbers") from exc
    if not all(math.isfinite(v) for v in out):
        raise DesignError(f"{name} contains a non-finite coordinate")
    if len(set(out)) != len(out):
        raise DesignError(f"{name} contains duplicated sites")
    return out


@dataclass(frozen=True)
class Design:
    """Observation sites for each variable plus the prediction target.

    ``sites1`` and ``sites2`` are kept in the given order; that order fixes the
    layout of joint covariance matrices and weight vectors.
    """

    sites1: tuple
    sites2: tuple
    target: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "sites1", _as_site_tuple("sites1", self.sites1))
        object.__setattr__(self, "sites2", _as_site_tuple("sites2", self.sites2))
        try:
            target = float(self.target)
        except (TypeError, ValueError) as exc:
            raise DesignError("target must be a number") from exc
        if not math.isfinite(target):
            raise DesignError("target must be finite")
        object.__setattr__(self, "target", target)

    @property
    def n_obs(self):
        return len(self.sites1) + len(self.sites2)

    @property
    def is_collocated(self):
        return self.sites1 == self.sites2

    def to_dict(self):
        return {"sites1": list(self.sites1), "sites2": list(self.sites2), "target": self.target}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise DesignError("design document must be a JSON object")
        for field in ("sites1", "sites2", "target"):
            if field not in data:
                raise DesignError(f"design is missing field {field!r}")
        for field in ("sites1", "sites2"):
            if not isinstance(data[field], list):
                raise DesignError(f"field {field!r} must be a list of numbers")
            if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in data[field]):
                raise DesignError(f"field {field!r} must be a list of numbers")
        if isinstance(data["target"], bool) or not isinstance(data["target"], (int, float)):
            raise DesignError("field 'target' must be a number")
        return cls(data["sites1"], data["sites2"], data["target"])

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DesignError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def load_design(path) -> Design:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DesignError(f"{path}: {exc.strerror}") from exc
    try:
        return Design.from_json(text)
    except DesignError as exc:
        raise DesignError(f"{path}: {exc}") from exc


def save_design(design: Design, path):
    Path(path).write_text(design.to_json())


def interleaved_design(n: int) -> Design:
    """Dense ``Y2`` grid ``{i/n : i = +-1..+-n}`` with ``Y1`` on its even-numerator half.

    ``Y1`` is observed at ``{2i/n : i = +-1..+-n/2}``; the target 0 belongs to
    neither set. Both sets are built from the same integer divisions, so
    ``sites1`` is an exact subset of ``sites2``.
    """
    if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
        raise ParameterError(f"n must be an even integer >= 2, got {n!r}")
    n = int(n)
    sites2 = [i / n for i in range(-n, 0)] + [i / n for i in range(1, n + 1)]
    half = n // 2
    sites1 = [2 * i / n for i in range(-half, 0)] + [2 * i / n for i in range(1, half + 1)]
    return Design(sites1, sites2, 0.0)


def collocated_design(sites, target=0.0) -> Design:
    """Both variables observed at exactly the same ``sites``."""
    sites = _as_site_tuple("sites", np.asarray(sites, dtype=float).ravel())
    return Design(sites, sites, target)
