"""Named analytic densities used by the CLI, the demos and the test-suite."""
from __future__ import annotations

import numpy as np

from .grid import GridDensity, load_density, load_density_csv

__all__ = ["gaussian", "exponential", "cosine_bump", "uniform_grid", "named_density", "parse_density_spec"]


def uniform_grid(span: float = 8.0, points: int = 2001) -> np.ndarray:
    """Symmetric grid on ``[-span, span]``."""
    if span <= 0:
        raise ValueError("span must be positive")
    if points < 3:
        raise ValueError("need at least 3 points")
    return np.linspace(-span, span, points)


def gaussian(x, sigma=1.0):
    return np.exp(-0.5 * (x / sigma) ** 2) / (sigma * np.sqrt(2 * np.pi))


def exponential(x, rate=1.0):
    """Two-sided exponential ``(rate/2) exp(-rate |x|)``; ``sqrt`` has a kink at 0."""
    return 0.5 * rate * np.exp(-rate * np.abs(x))


def cosine_bump(x, width=1.0):
    """``cos^4(pi x / 2w) / (3w/4)`` on ``|x| <= w``, zero outside."""
    inside = np.abs(x) < width
    out = np.zeros_like(np.asarray(x, dtype=float))
    out[inside] = np.cos(np.pi * x[inside] / (2 * width)) ** 4 / (0.75 * width)
    return out


_NAMED = {"gaussian": gaussian, "exponential": exponential, "cosine-bump": cosine_bump}


def parse_density_spec(spec: str):
    """Split ``"name:param"`` into ``(name, param)``; ``(None, spec)`` for file paths."""
    name, _, param = spec.partition(":")
    if name in _NAMED:
        return name, float(param) if param else 1.0
    return None, spec


def named_density(spec: str, mass: float = 1.0, span: float = 8.0, points: int = 2001) -> GridDensity:
    """Sample a named density (``gaussian:1``, ``exponential:2``, ``cosine-bump:1``) or read a CSV.

    The samples are rescaled so that the trapezoidal integral equals ``mass``.
    """
    name, param = parse_density_spec(spec)
    if name is None:
        return load_density_csv(param, mass)
    x = uniform_grid(span, points)
    return load_density(np.column_stack([x, _NAMED[name](x, param)]), mass, profile_mass=1.0)
