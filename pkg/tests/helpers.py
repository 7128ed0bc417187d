"""Shared builders for randomized states and test-only model families."""

import numpy as np

from qfidisc.exceptions import DomainError
from qfidisc.models import ParametricModel


def random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix (Wishart construction)."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T + 1e-3 * np.eye(dim)
    return rho / np.trace(rho).real


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0


def rotation_model(dim: int, seed: int) -> ParametricModel:
    """Smooth fixed-rank family: a random state conjugated by exp(-i theta H)."""
    rng = np.random.default_rng(seed)
    rho0 = random_density(dim, rng)
    ham = random_hermitian(dim, rng)
    w, v = np.linalg.eigh(ham)

    def state(theta: float) -> np.ndarray:
        u = (v * np.exp(-1j * theta * w)) @ v.conj().T
        return u @ rho0 @ u.conj().T

    def derivative(theta: float) -> np.ndarray:
        rho = state(theta)
        return -1j * (ham @ rho - rho @ ham)

    return ParametricModel(name=f"rotation-{dim}d", dim=dim, state_fn=state, derivative_fn=derivative)


def diagonal_branch_model(branch, name="diagonal-branch") -> ParametricModel:
    """diag(q(theta), 1 - q(theta)) for a supplied scalar branch q."""

    def state(theta: float) -> np.ndarray:
        q = branch(theta)
        if not 0.0 <= q <= 1.0:
            raise DomainError(f"branch value {q} outside [0, 1]")
        return np.diag([q, 1.0 - q]).astype(complex)

    return ParametricModel(name=name, dim=2, state_fn=state)


def bernoulli_family(theta: float):
    """Distribution factory for the coin with bias theta; domain [0, 1]."""
    from qfidisc.classical import Distribution

    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta={theta} outside [0, 1]")
    return Distribution(("0", "1"), np.array([theta, 1.0 - theta]))
