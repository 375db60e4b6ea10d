"""Plain data carriers shared by the geometric constructors.

A model stores exactly what analysis needs: the quadric ideal piece of the
curve, optionally the quadrics of the surface it is expected to sweep out,
and a batch of witness points used for cheap vanishing spot-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .linalg import Subspace

FOURGONAL = "fourgonal"
BIELLIPTIC = "bielliptic"
DELPEZZO = "delpezzo"
VERONESE = "veronese"
GENUS5 = "genus5"

CURVE_FAMILIES = (FOURGONAL, BIELLIPTIC, DELPEZZO, VERONESE, GENUS5)


@dataclass
class SurfaceModel:
    """A surface of degree g-1 in P^{g-1} given by its quadric ideal piece."""

    kind: str
    genus: int
    prime: int
    seed: int
    quadrics: Subspace
    sample_points: Optional[np.ndarray] = None
    params: dict[str, Any] = field(default_factory=dict)


@dataclass
class CurveModel:
    """A canonically embedded curve given by its quadric ideal piece.

    ``surface_quadrics`` is present for families that come with a preferred
    surface (cone over an elliptic curve, Del Pezzo, Veronese) and holds
    that surface's quadrics in the same coordinates.
    """

    family: str
    genus: int
    prime: int
    seed: int
    quadrics: Subspace
    surface_quadrics: Optional[Subspace] = None
    sample_points: Optional[np.ndarray] = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.family not in CURVE_FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}, expected one of {CURVE_FAMILIES}"
            )
