"""Geometric gate synthesis.

A cyclic qubit observable tilted by angle phi from the z axis, together
with a geometric phase beta, determines the single-qubit gate

    U(phi, beta) = e^{i beta} P_+ + e^{-i beta} P_-
                 = cos(beta) I + i sin(beta) (sin(phi) sigma_x + cos(phi) sigma_z),

realized physically by the two-loop protocol that cancels all dynamical
phases. Two such gates on the blocks of a control qubit assemble the
geometric CNOT.
"""

import numpy as np
from dataclasses import dataclass

from .errors import DimensionMismatchError, DynamicalResidualError, NotUnitaryError
from .hamiltonians import make_rotating, make_two_loop
from .linalg import is_unitary, sigma_x, sigma_z
from .obspace import from_observable, match_columns
from .phases import geometric_phases, wrap_angle
from .propagation import solve

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class GateSpec:
    """Gate parameters: observable tilt phi and geometric phase beta (rad)."""

    phi: float
    beta: float


def u_phi_beta(spec: GateSpec):
    """The single-qubit geometric gate for the given spec; det = 1."""
    c2 = np.cos(spec.phi / 2) ** 2
    s2 = np.sin(spec.phi / 2) ** 2
    ep, em = np.exp(1j * spec.beta), np.exp(-1j * spec.beta)
    off = 1j * np.sin(spec.phi) * np.sin(spec.beta)
    return np.array(
        [[ep * c2 + em * s2, off], [off, ep * s2 + em * c2]], dtype=complex
    )


def two_qubit_gate(spec0: GateSpec, spec1: GateSpec):
    """Block gate diag(U(spec0), U(spec1)) in the basis |00>,|01>,|10>,|11>:
    spec0 acts on the target when the control is |0>, spec1 when |1>."""
    U = np.zeros((4, 4), dtype=complex)
    U[:2, :2] = u_phi_beta(spec0)
    U[2:, 2:] = u_phi_beta(spec1)
    return U


def commutes(a: GateSpec, b: GateSpec, tol=1e-9):
    """Whether the two gates commute: ||[U_a, U_b]||_F <= tol.

    Analytically this holds iff the tilt angles differ by a multiple of
    pi, or either beta is a multiple of pi.
    """
    Ua, Ub = u_phi_beta(a), u_phi_beta(b)
    return bool(np.linalg.norm(Ua @ Ub - Ub @ Ua) <= tol)


def cnot_equivalence(U, tol=1e-8):
    """Whether U = diag(I, e^{i alpha} sigma_x), i.e. a CNOT up to an
    overall phase on the flipped block. Returns (equivalent, alpha)."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (4, 4):
        raise DimensionMismatchError("cnot_equivalence expects a two-qubit gate")
    if not is_unitary(U, 1e-8):
        raise NotUnitaryError("gate must be unitary")
    alpha = float(np.angle((U[2, 3] + U[3, 2]) / 2)) % TWO_PI if abs(
        U[2, 3] + U[3, 2]
    ) > 1e-12 else 0.0
    target = np.exp(1j * alpha) * np.array([[0.0, 1.0], [1.0, 0.0]])
    ok = (
        np.linalg.norm(U[:2, :2] - np.eye(2)) <= tol
        and np.linalg.norm(U[:2, 2:]) <= tol
        and np.linalg.norm(U[2:, :2]) <= tol
        and np.linalg.norm(U[2:, 2:] - target) <= tol
    )
    return bool(ok), alpha


def two_loop_protocol(w0, w1, w, steps=4096):
    """Drive the rotating-field loop and then its time-and-field-reversed
    copy, so every dynamical phase cancels, and read the resulting gate.

    Returns (gate, report, spec): the simulated U(2T, 0), the phase
    report of the double loop, and the fitted GateSpec whose tilt is the
    cyclic-observable angle and whose beta is read from the matched
    eigen-overlaps of the gate (the same phase reading detect_cyclic
    uses).
    """
    T = TWO_PI / w
    steps = int(steps) + int(steps) % 2  # the reversal point must sit on the grid
    h2 = make_two_loop(make_rotating(w0, w1, w), T)
    p = solve(h2, 2 * T, steps=steps)

    r = np.hypot(w0, w1 + w)
    phi = 2 * np.arctan2(w0, w1 + w + r)
    X0 = -(np.sin(phi) * sigma_x + np.cos(phi) * sigma_z)
    report = geometric_phases(p, h2, X0)
    worst = float(np.max(np.abs(report.gamma)))
    if worst > 1e-6:
        raise DynamicalResidualError(
            f"dynamical phases failed to cancel over the double loop "
            f"(worst residual {worst:.3e})"
        )

    gate = p.final()
    obs = from_observable(X0)
    M = obs.vectors.conj().T @ gate @ obs.vectors
    perm, _, _ = match_columns(M, tol=1e-6)
    beta = float(wrap_angle(np.angle(M[perm[0], 0])))
    return gate, report, GateSpec(phi=float(phi), beta=beta)
