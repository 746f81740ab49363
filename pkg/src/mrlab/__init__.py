"""Finite rings, monoid rings and Armendariz-type conditions, checked by enumeration."""

from __future__ import annotations

__version__ = "0.1.0"

from .monoid_ring import MonoidRingElement
from .monoids import construct_monoid, monoid_scan
from .properties import Bounds, Kind, Status, Verdict, check_armendariz, check_classical
from .rings import FiniteRing, construct_ring, ring_scan

__all__ = [
    "Bounds",
    "FiniteRing",
    "Kind",
    "MonoidRingElement",
    "Status",
    "Verdict",
    "__version__",
    "check_armendariz",
    "check_classical",
    "construct_monoid",
    "construct_ring",
    "monoid_scan",
    "ring_scan",
]
