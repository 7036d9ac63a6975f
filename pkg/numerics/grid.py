# numerics/grid.py
# Sampled complex function on a real interval, with provenance metadata.

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from numerics.errors import ParameterError


@dataclass(frozen=True)
class GridFunction:
    """Complex samples on ascending nodes.

    Uniform grids report x0/dx; explicit node lists report dx = None.
    """
    nodes: np.ndarray
    values: np.ndarray
    provenance: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float).ravel()
        values = np.asarray(self.values, dtype=complex).ravel()
        if nodes.size < 2:
            raise ParameterError("GridFunction needs at least 2 nodes")
        if nodes.shape != values.shape:
            raise ParameterError(f"{nodes.size} nodes but {values.size} values")
        if np.any(np.diff(nodes) <= 0.0):
            raise ParameterError("GridFunction nodes must be strictly ascending (dx > 0)")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @classmethod
    def uniform(cls, x0: float, dx: float, values, provenance: Optional[Dict[str, Any]] = None) -> "GridFunction":
        values = np.asarray(values, dtype=complex).ravel()
        if not dx > 0.0:
            raise ParameterError(f"dx must be > 0, got {dx}")
        return cls(x0 + dx * np.arange(values.size), values, dict(provenance or {}))

    @property
    def x0(self) -> float:
        return float(self.nodes[0])

    @property
    def dx(self) -> Optional[float]:
        steps = np.diff(self.nodes)
        if np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            return float(steps[0])
        return None

    def __len__(self) -> int:
        return int(self.nodes.size)

    def l2_norm(self) -> float:
        from numerics.quadrature import integrate_samples
        return float(np.sqrt(np.real(integrate_samples(np.abs(self.values) ** 2, self.nodes))))
