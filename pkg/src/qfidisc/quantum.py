"""Dense Hermitian linear algebra and quantum-information functionals.

Everything operates on plain complex ndarrays representing density
matrices (Hermitian, unit trace, positive semidefinite up to numerical
noise) and Hermitian operators such as parameter derivatives of a state.

The central objects:

* ``qfi``: quantum Fisher information from the spectral representation,
  Q = 2 sum_{lk+ll>0} |<lk| drho |ll>|^2 / (lk+ll).
* ``sld``: the symmetric logarithmic derivative L solving
  2 drho = L rho + rho L, with the kernel block fixed to zero.
* ``fidelity``: Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
* ``bures_metric_fd``: the metric coefficient g in
  2 [1 - F(rho_t, rho_{t+e})] = g e^2 + O(e^3), by finite differences.
* ``qfi_limit``: one-sided limit of the QFI along a step-halving sequence,
  with divergence detection for singular-metric points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateModelError,
    DivergenceError,
    DomainError,
    InvalidInputError,
    NumericalError,
    StepSizeError,
)
from .numdiff import richardson_limit

SUPPORT_TOL = 1e-12
_HERMITIAN_TOL = 1e-12
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-10
_UNDERFLOW_TOL = 1e-14


@dataclass(frozen=True)
class SpectralData:
    """Eigendecomposition of a density matrix with an effective-rank cut.

    ``eigenvalues`` are clamped to >= 0 and sorted descending;
    ``eigenvectors[:, k]`` is the unit eigenvector of ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    support_tol: float
    effective_rank: int

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        """Rebuild the matrix sum_k lambda_k |k><k|."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def validate_hermitian(op: np.ndarray, tol: float = 1e-10, what: str = "operator") -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise InvalidInputError(f"{what} must be a square matrix, got shape {op.shape}")
    if np.max(np.abs(op - op.conj().T)) > tol:
        raise InvalidInputError(f"{what} is not Hermitian within {tol:g}")
    return op


def validate_density_matrix(rho: np.ndarray, check_psd: bool = False) -> np.ndarray:
    """Check the density-matrix contract; returns the array unchanged.

    Hermiticity within 1e-12, unit trace within 1e-10; eigenvalue
    positivity (within 1e-10) only when ``check_psd`` is set since it
    costs a full eigensolve.
    """
    rho = validate_hermitian(rho, _HERMITIAN_TOL, "density matrix")
    tr = np.trace(rho)
    if abs(tr - 1.0) > _TRACE_TOL:
        raise InvalidInputError(f"density matrix trace {tr} differs from 1 beyond {_TRACE_TOL:g}")
    if check_psd:
        lo = float(np.linalg.eigvalsh(rho)[0])
        if lo < -_PSD_TOL:
            raise InvalidInputError(f"density matrix has eigenvalue {lo} < -{_PSD_TOL:g}")
    return rho


def spectral_decompose(rho: np.ndarray, support_tol: float = SUPPORT_TOL) -> SpectralData:
    """Eigendecompose a density matrix, descending order, clamped spectrum."""
    if support_tol < 0:
        raise InvalidInputError("support_tol must be >= 0")
    rho = validate_density_matrix(rho)
    try:
        lam, vecs = np.linalg.eigh(rho)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    order = np.argsort(lam)[::-1]
    lam = np.maximum(lam[order], 0.0)
    vecs = vecs[:, order]
    rank = int(np.count_nonzero(lam > support_tol))
    return SpectralData(lam, vecs, support_tol, rank)


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    lam, vecs = np.linalg.eigh(rho)
    lam = np.sqrt(np.maximum(lam, 0.0))
    return (vecs * lam) @ vecs.conj().T


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].

    Goes through explicit eigendecompositions with eigenvalue clamping,
    which stays well behaved for rank-deficient inputs.
    """
    rho = validate_density_matrix(rho)
    sigma = validate_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise InvalidInputError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    sq = _sqrt_psd(rho)
    inner = sq @ sigma @ sq
    w = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    f = float(np.sum(np.sqrt(np.maximum(w, 0.0))))
    return min(max(f, 0.0), 1.0)


def _spectral_overlaps(rho, drho, support_tol):
    drho = validate_hermitian(drho, 1e-10, "state derivative")
    if np.shape(rho) != drho.shape:
        raise InvalidInputError("state and derivative dimensions differ")
    if np.max(np.abs(rho)) <= support_tol:
        raise DegenerateModelError("no eigenvalue pair above tolerance; state has no weight")
    spect = spectral_decompose(rho, support_tol)
    d_eig = spect.eigenvectors.conj().T @ drho @ spect.eigenvectors
    denom = spect.eigenvalues[:, None] + spect.eigenvalues[None, :]
    mask = denom > support_tol
    if not mask.any():
        raise DegenerateModelError("no eigenvalue pair above tolerance; state has no weight")
    return spect, d_eig, denom, mask


def sld(rho: np.ndarray, drho: np.ndarray, support_tol: float = SUPPORT_TOL) -> np.ndarray:
    """Symmetric logarithmic derivative, kernel block set to zero.

    Components on eigenvalue pairs with lk + ll <= support_tol are left
    unspecified by the defining equation; zero is the minimal-norm choice
    and does not affect the Fisher information.
    """
    spect, d_eig, denom, mask = _spectral_overlaps(rho, drho, support_tol)
    l_eig = np.zeros_like(d_eig)
    l_eig[mask] = 2.0 * d_eig[mask] / denom[mask]
    v = spect.eigenvectors
    l_op = v @ l_eig @ v.conj().T
    return (l_op + l_op.conj().T) / 2.0


def qfi(rho: np.ndarray, drho: np.ndarray, support_tol: float = SUPPORT_TOL) -> float:
    """Quantum Fisher information via the spectral sum over the support."""
    _, d_eig, denom, mask = _spectral_overlaps(rho, drho, support_tol)
    return float(2.0 * np.sum(np.abs(d_eig[mask]) ** 2 / denom[mask]))


# ---------------------------------------------------------------------------
# Model-level helpers.  A "model" is any object exposing state_fn(theta),
# optional derivative_fn(theta), and in_domain(theta); see models.py.
# ---------------------------------------------------------------------------


def state_derivative(model, theta: float) -> np.ndarray:
    """d rho / d theta, analytic when the model provides it, else central
    differences with step 1e-5 * max(1, |theta|) (one-sided second-order
    at a domain edge)."""
    if model.derivative_fn is not None:
        return np.asarray(model.derivative_fn(theta), dtype=complex)
    h = 1e-5 * max(1.0, abs(theta))
    above = model.in_domain(theta + h)
    below = model.in_domain(theta - h)
    f = model.state_fn
    if above and below:
        return (f(theta + h) - f(theta - h)) / (2.0 * h)
    if above:
        return (-3.0 * f(theta) + 4.0 * f(theta + h) - f(theta + 2.0 * h)) / (2.0 * h)
    if below:
        return (3.0 * f(theta) - 4.0 * f(theta - h) + f(theta - 2.0 * h)) / (2.0 * h)
    raise DomainError(f"cannot differentiate {model.name} at theta={theta}: no room in domain")


def model_qfi(model, theta: float, support_tol: float = SUPPORT_TOL) -> float:
    """QFI of a parametric model at a point."""
    rho = model.state_fn(theta)
    drho = state_derivative(model, theta)
    return qfi(rho, drho, support_tol)


def bures_metric_fd(model, theta: float, eps: float = 1e-4) -> float:
    """Metric coefficient of 2[1 - F] by finite differences.

    Uses the two-sided average of the difference quotients at eps and a
    first-order Richardson step at eps/2.  Falls back to the one-sided
    quotient when theta sits on a domain edge.
    """
    if eps <= 0:
        raise StepSizeError("eps must be positive")
    rho0 = np.asarray(model.state_fn(theta), dtype=complex)
    above = model.in_domain(theta + eps)
    below = model.in_domain(theta - eps)
    if not (above or below):
        raise DomainError(f"no room around theta={theta} in the domain of {model.name}")

    def quotient(e: float) -> float:
        total = 0.0
        sides = 0
        for sign, ok in ((+1.0, above), (-1.0, below)):
            if not ok:
                continue
            gap = 1.0 - fidelity(rho0, model.state_fn(theta + sign * e))
            if gap < _UNDERFLOW_TOL:
                raise StepSizeError(
                    f"1 - fidelity = {gap:.3e} underflows at eps={e:g}; increase eps"
                )
            total += 2.0 * gap / e**2
            sides += 1
        return total / sides

    q_full = quotient(eps)
    q_half = quotient(eps / 2.0)
    return 2.0 * q_half - q_full


@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated one-sided limit with its convergence estimate."""

    value: float
    error: float
    thetas: np.ndarray
    qfi_values: np.ndarray


def qfi_limit(
    model,
    theta_bar: float,
    side: str = "above",
    steps: int = 6,
    h0: float = 1e-2,
    rel_tol: float = 1e-3,
    support_tol: float = SUPPORT_TOL,
) -> LimitEstimate:
    """Limit of the QFI as theta -> theta_bar from one side.

    Samples theta_bar +/- h0 * 2**-k for k = 0..steps-1, extrapolates with
    a Richardson tableau, and raises ``DivergenceError`` when successive
    extrapolants disagree beyond ``rel_tol`` relative (the signature of a
    second-kind discontinuity or singular metric).
    """
    if steps < 2:
        raise InvalidInputError("steps must be >= 2")
    if side not in ("above", "below"):
        raise InvalidInputError(f"side must be 'above' or 'below', got {side!r}")
    sign = 1.0 if side == "above" else -1.0
    thetas = theta_bar + sign * h0 * 2.0 ** -np.arange(steps)
    for th in thetas:
        if not model.in_domain(th):
            raise DomainError(f"theta={th} outside the domain of {model.name} (side={side})")
    values = np.array([model_qfi(model, th, support_tol) for th in thetas])
    extrapolants = richardson_limit(values)
    diff = abs(extrapolants[-1] - extrapolants[-2])
    scale = max(abs(extrapolants[-1]), 1e-6)
    if diff > rel_tol * scale:
        raise DivergenceError(
            f"QFI limit at theta_bar={theta_bar} ({side}) does not converge: "
            f"last extrapolants differ by {diff:.3e} (relative {diff / scale:.3e})",
            thetas=thetas,
            values=values,
        )
    return LimitEstimate(float(extrapolants[-1]), float(diff), thetas, values)
