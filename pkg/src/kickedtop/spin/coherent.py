"""
Spin coherent states and other initial states.

|theta, phi> = exp(-i phi J_z) exp(-i theta J_y) |j, j>, with theta measured
from the +z pole. Amplitudes are evaluated in closed form in log space so
that j in the hundreds does not overflow the binomial coefficients.
"""

from typing import Optional, Union

import numpy as np
from scipy import special

from kickedtop.core.exceptions import ConfigurationError, SpinValueError
from kickedtop.spin.types import NAMED_STATES, CoherentParams, ComplexArray, SpinParams, StateVector


def coherent_amplitudes(spin: SpinParams, thetas: np.ndarray, phis: np.ndarray) -> ComplexArray:
    """Coherent-state amplitudes for many angle pairs at once.

    Args:
        spin: Spin parameters.
        thetas: Polar angles, any shape.
        phis: Azimuthal angles, broadcastable against thetas.

    Returns:
        Array of shape (D, *broadcast_shape) with one state per column.
    """
    thetas, phis = np.broadcast_arrays(np.asarray(thetas, dtype=np.float64), np.asarray(phis, dtype=np.float64))
    n = spin.twice_j
    k = np.arange(spin.dim, dtype=np.float64)  # k = j - m
    m = spin.m_values
    expand = (slice(None),) + (None,) * thetas.ndim

    cos_half = np.abs(np.cos(thetas / 2.0))
    sin_half = np.abs(np.sin(thetas / 2.0))
    log_binom = 0.5 * (special.gammaln(n + 1) - special.gammaln(k + 1) - special.gammaln(n - k + 1))
    log_magnitude = (
        log_binom[expand]
        + special.xlogy((n - k)[expand], cos_half[None, ...])
        + special.xlogy(k[expand], sin_half[None, ...])
    )
    # Signs of cos/sin(theta/2) for theta outside [0, pi].
    sign = np.sign(np.cos(thetas / 2.0))[None, ...] ** (n - k)[expand] * np.sign(np.sin(thetas / 2.0))[
        None, ...
    ] ** k[expand]
    sign = np.where(np.isnan(sign), 1.0, sign)
    phase = np.exp(-1j * m[expand] * phis[None, ...])
    return sign * np.exp(log_magnitude) * phase


def coherent_state(spin: SpinParams, params: CoherentParams) -> StateVector:
    """Spin coherent state |theta, phi>.

    Args:
        spin: Spin parameters.
        params: Canonical angles.

    Returns:
        Unit-norm state.
    """
    amplitudes = coherent_amplitudes(spin, np.array(params.theta), np.array(params.phi))
    return StateVector(amplitudes / np.linalg.norm(amplitudes))


def basis_state(spin: SpinParams, m: float) -> StateVector:
    """The J_z eigenstate |j, m>."""
    k = int(round(spin.j - m))
    if not 0 <= k < spin.dim or abs((spin.j - m) - k) > 1e-9:
        raise SpinValueError(f"m={m} is not a magnetic quantum number of j={spin}")
    amplitudes = np.zeros(spin.dim, dtype=np.complex128)
    amplitudes[k] = 1.0
    return StateVector(amplitudes)


def named_state(spin: SpinParams, name: str) -> StateVector:
    """Coherent state along a named axis: +z, -z, +x, -x, +y, -y.

    Raises:
        ConfigurationError: If the name is unknown.
    """
    params = NAMED_STATES.get(name.strip().lower())
    if params is None:
        raise ConfigurationError(f"unknown state {name!r}; choose one of {', '.join(NAMED_STATES)}", key="state")
    return coherent_state(spin, params)


def haar_random_state(spin: SpinParams, rng: Union[np.random.Generator, int, None] = None) -> StateVector:
    """Haar-random pure state: normalized vector of i.i.d. complex Gaussians."""
    generator = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    amplitudes = generator.standard_normal(spin.dim) + 1j * generator.standard_normal(spin.dim)
    return StateVector(amplitudes / np.linalg.norm(amplitudes))


def resolve_initial_state(
    spin: SpinParams, state: Optional[str] = None, params: Optional[CoherentParams] = None
) -> StateVector:
    """A named state if given, otherwise the coherent state at params."""
    if state:
        return named_state(spin, state)
    return coherent_state(spin, params or CoherentParams(2.25, 2.0))
