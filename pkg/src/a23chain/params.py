"""Model parameters shared by every operator-valued object."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class ModelParams:
    """Crossing parameter, boundary parameters and site inhomogeneities."""

    eta: complex = 0.4
    epsilon: complex = 0.0
    epsilon_prime: complex = 0.0
    thetas: tuple[complex, ...] = field(default_factory=tuple)
    n_sites: int | None = None

    def __post_init__(self):
        self.eta = complex(self.eta)
        self.epsilon = complex(self.epsilon)
        self.epsilon_prime = complex(self.epsilon_prime)
        self.thetas = tuple(complex(t) for t in self.thetas)
        if self.n_sites is None:
            self.n_sites = len(self.thetas)
        if not self.thetas and self.n_sites:
            self.thetas = (0j,) * self.n_sites
        if self.n_sites != len(self.thetas):
            raise ValueError("n_sites must equal the number of inhomogeneities")
        if self.n_sites < 1:
            raise ValueError("need at least one site")
        if abs(np.sinh(self.eta)) < 1e-12:
            raise ValueError("sinh(eta) must be nonzero")

    @property
    def hilbert_dim(self) -> int:
        return 4**self.n_sites
