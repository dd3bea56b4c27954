"""Convex generator functions f for f-divergences.

A generator is convex on (0, inf) with f(1) = 0; the value at 0 is supplied
explicitly as the continuous limit.  Builtins:

    kl    f(x) = x ln x          (nats)
    chi2  f(x) = x^2 - 1
    tv    f(x) = |x - 1|

Convexity and the declared second derivative are spot-checked when a
generator is constructed, so invalid generators fail fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InvariantViolation, UnknownGenerator

CONVEXITY_GRID = (0.1, 0.5, 1.0, 2.0, 10.0)
_MIDPOINT_SLACK = 1e-12
_FD_REL_TOL = 1e-5


@dataclass(frozen=True)
class FGenerator:
    """A divergence generator with its registration metadata.

    ``second_derivative`` may be None (e.g. tv); operations that need f''
    reject such generators.  ``operator_convex`` marks generators for which
    the data-processing inequality of the maximal divergence is guaranteed.
    """

    name: str
    value: Callable[[float], float]
    value_at_zero: float
    second_derivative: Optional[Callable[[float], float]] = None
    operator_convex: bool = False

    def __post_init__(self):
        if float(self.value(1.0)) != 0.0:
            raise InvariantViolation("normalization", f"{self.name}: f(1) must be 0")
        for x in CONVEXITY_GRID:
            for y in CONVEXITY_GRID:
                mid = self.value((x + y) / 2)
                chord = (self.value(x) + self.value(y)) / 2
                if mid > chord + _MIDPOINT_SLACK:
                    raise InvariantViolation(
                        "convexity",
                        f"{self.name}: midpoint test failed at ({x}, {y})",
                    )
        if self.second_derivative is not None:
            for x in CONVEXITY_GRID:
                h = x * 1e-4
                fd = (self.value(x + h) - 2 * self.value(x) + self.value(x - h)) / (h * h)
                sd = self.second_derivative(x)
                if abs(fd - sd) > _FD_REL_TOL * max(1.0, abs(sd)):
                    raise InvariantViolation(
                        "second-derivative",
                        f"{self.name}: declared f''({x}) = {sd:.6g} but finite "
                        f"difference gives {fd:.6g}",
                    )

    def at(self, x):
        """Evaluate f at x >= 0, using the declared limit at x = 0."""
        if x == 0.0:
            return self.value_at_zero
        return float(self.value(x))


def builtin_generator(name):
    """Return one of the builtin generators by name: kl, chi2, or tv."""
    if name == "kl":
        return FGenerator(
            name="kl",
            value=lambda x: x * math.log(x),
            value_at_zero=0.0,
            second_derivative=lambda x: 1.0 / x,
            operator_convex=True,
        )
    if name == "chi2":
        return FGenerator(
            name="chi2",
            value=lambda x: x * x - 1.0,
            value_at_zero=-1.0,
            second_derivative=lambda x: 2.0,
            operator_convex=True,
        )
    if name == "tv":
        return FGenerator(
            name="tv",
            value=lambda x: abs(x - 1.0),
            value_at_zero=1.0,
            second_derivative=None,
            operator_convex=False,
        )
    raise UnknownGenerator(name)


BUILTIN_NAMES = ("kl", "chi2", "tv")
