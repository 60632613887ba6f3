"""Lumped model of the bench payload: a thin cantilever strip with a tip mass.

The strip's own mass is neglected against the tip mass, so the payload acts as
a single-degree-of-freedom oscillator with tip stiffness c = 3*E*I/l**3 and
natural angular frequency sqrt(c/m).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


def area_moment(b: float, h: float) -> float:
    """Second moment of area b*h**3/12 of a solid rectangle bending about its thin axis."""
    if b <= 0.0 or h <= 0.0:
        raise ValueError("section dimensions must be positive")
    return b * h**3 / 12.0


def tip_stiffness(E: float, I: float, l: float) -> float:
    """Lateral stiffness 3*E*I/l**3 felt at the free end of a clamped beam."""
    if E <= 0.0 or I <= 0.0 or l <= 0.0:
        raise ValueError("E, I and l must be positive")
    return 3.0 * E * I / l**3


def natural_frequency(c: float, m: float) -> float:
    """Angular frequency sqrt(c/m) [rad/s] of an undamped mass on a spring."""
    if c <= 0.0 or m <= 0.0:
        raise ValueError("stiffness and mass must be positive")
    return math.sqrt(c / m)


@dataclass(frozen=True)
class BeamSpec:
    """Cantilever geometry, material and tip load, all SI."""

    l: float      # free length [m]
    b: float      # width [m]
    h: float      # thickness [m]; bending happens about this thin axis
    E: float      # Young's modulus [Pa]
    m_tip: float  # point mass at the free end [kg]

    def __post_init__(self) -> None:
        for name in ("l", "b", "h", "E", "m_tip"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.h > self.b:
            raise ValueError("thickness h must not exceed width b for a thin strip")

    @property
    def second_moment(self) -> float:
        return area_moment(self.b, self.h)

    @property
    def stiffness(self) -> float:
        return tip_stiffness(self.E, self.second_moment, self.l)

    @property
    def frequency(self) -> float:
        """Natural angular frequency of the tip mass on the strip [rad/s]."""
        return natural_frequency(self.stiffness, self.m_tip)


def load_beam(path, tip_mass: float | None = None) -> BeamSpec:
    """Read a beam description from a JSON document with keys l, b, h, E, m_tip.

    ``tip_mass`` overrides the document's m_tip and must be given when the
    document omits that key.
    """
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: beam document must be a JSON object")
    missing = [key for key in ("l", "b", "h", "E") if key not in doc]
    if missing:
        raise ValueError(f"{path}: beam document is missing keys: {', '.join(missing)}")
    m_tip = tip_mass if tip_mass is not None else doc.get("m_tip")
    if m_tip is None:
        raise ValueError(f"{path}: beam document has no m_tip and no tip mass was given")
    return BeamSpec(l=float(doc["l"]), b=float(doc["b"]), h=float(doc["h"]),
                    E=float(doc["E"]), m_tip=float(m_tip))
