"""Compactly supported test kernels.

A *kernel* is any object with

* ``support`` -- tuple ``(a, b)`` outside of which it vanishes,
* ``knots``   -- sorted breakpoints where it may be non-smooth,
* ``__call__(t)`` -- vectorized evaluation on a float array.

B-splines (see :mod:`sparseproc.operators`) satisfy this protocol, as do
the step functions below, which are the test kernels used for observation
and second-order checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["StepFunction", "rect", "Reversed", "reverse"]


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function, ``values[i]`` on ``(breaks[i], breaks[i+1]]``.

    Zero outside ``(breaks[0], breaks[-1]]``. The half-open convention
    matches the rectangular window ``rect(a, b)`` which is 1 on ``(a, b]``.
    """

    breaks: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.breaks) != len(self.values) + 1:
            raise ValueError("need len(breaks) == len(values) + 1")
        if any(b2 <= b1 for b1, b2 in zip(self.breaks, self.breaks[1:])):
            raise ValueError("breaks must be strictly increasing")

    @property
    def support(self) -> tuple[float, float]:
        return (self.breaks[0], self.breaks[-1])

    @property
    def knots(self) -> tuple[float, ...]:
        return self.breaks

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        brk = np.asarray(self.breaks)
        idx = np.searchsorted(brk, t, side="left") - 1
        inside = (t > brk[0]) & (t <= brk[-1])
        out = np.zeros_like(t)
        vals = np.asarray(self.values)
        out[inside] = vals[np.clip(idx[inside], 0, len(vals) - 1)]
        return out

    def integral(self) -> float:
        widths = np.diff(self.breaks)
        return float(np.dot(widths, self.values))

    def inner(self, other: "StepFunction") -> float:
        """Exact L2 inner product with another step function."""
        cuts = np.union1d(self.breaks, other.breaks)
        mids = (cuts[:-1] + cuts[1:]) / 2.0
        return float(np.dot(np.diff(cuts), self(mids) * other(mids)))


def rect(a: float, b: float) -> StepFunction:
    """Indicator of the half-open interval ``(a, b]``."""
    return StepFunction(breaks=(float(a), float(b)), values=(1.0,))


@dataclass(frozen=True)
class Reversed:
    """Time reversal ``t -> base(-t)`` of any kernel."""

    base: object

    @property
    def support(self) -> tuple[float, float]:
        a, b = self.base.support
        return (-b, -a)

    @property
    def knots(self) -> tuple[float, ...]:
        return tuple(sorted(-k for k in self.base.knots))

    def __call__(self, t):
        return self.base(-np.asarray(t, dtype=float))


def reverse(kernel) -> Reversed:
    return Reversed(kernel)
