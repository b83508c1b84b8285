"""End-to-end extraction of the geometric phases of a cyclic evolution.

For an initial observable X0 whose Heisenberg evolution closes at time
T, the total phase theta_n of each eigenstate splits as

    theta_n = gamma_n + beta_n   (mod 2pi),

with gamma_n the time integral of the energy expectation in the FIXED
initial eigenstate and beta_n the geometric remainder. beta_n is also,
independently, the holonomy of the horizontal lift of the projected
curve; geometric_phases computes both and cross-checks them.
"""

import numpy as np
from dataclasses import dataclass

import scipy.integrate

from .bundle import holonomy, horizontal_lift, lift_from_propagator
from .errors import CrossCheckError, NotCyclicError
from .hamiltonians import HamiltonianSchedule
from .obspace import from_observable, match_columns
from .propagation import Propagator

TWO_PI = 2 * np.pi

CYCLIC_TOL = 1e-6
CROSS_TOL = 1e-5


def wrap_angle(x):
    """Map angles to the principal branch [0, 2pi)."""
    return np.asarray(x) % TWO_PI


def circular_distance(a, b):
    """Distance on the circle, elementwise, in [0, pi]."""
    d = np.abs(np.asarray(a) - np.asarray(b)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


@dataclass(frozen=True)
class CyclicityCheck:
    is_cyclic: bool
    thetas: np.ndarray
    permutation: tuple
    residual: float


def detect_cyclic(p: Propagator, X0, tol=CYCLIC_TOL):
    """Check whether X0 returns to itself under the Heisenberg evolution.

    Cyclic means every initial eigenstate is reproduced up to phase by
    U(0, T); the phases are the thetas. If the eigenframe instead comes
    back permuted, the evolution is reported non-cyclic with the
    permutation attached (the observable still closes as a decomposition,
    but no per-level total phase exists).
    """
    obs = from_observable(np.asarray(X0, dtype=complex))
    V = p.final().conj().T
    M = obs.vectors.conj().T @ V @ obs.vectors
    perm, amps, ok = match_columns(M, tol)
    thetas = wrap_angle(np.angle(M[perm, np.arange(obs.dim)]))
    identity = tuple(range(obs.dim))
    return CyclicityCheck(
        is_cyclic=bool(ok and tuple(int(m) for m in perm) == identity),
        thetas=thetas,
        permutation=tuple(int(m) for m in perm),
        residual=float(np.max(1.0 - amps)),
    )


def dynamical_phase(h: HamiltonianSchedule, psi, T, steps):
    """Simpson quadrature of t -> <psi| h(t) |psi> over [0, T].

    psi is held fixed (the initial eigenvector). The quadrature is
    applied piecewise between the schedule's jump points so that no
    panel straddles a discontinuity.
    """
    if steps % 2 != 0:
        raise ValueError("steps must be even for composite Simpson")
    psi = np.asarray(psi, dtype=complex)
    cuts = [b for b in h.breakpoints if 0.0 < b < T]
    edges = [0.0] + cuts + [T]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        n = max(2, 2 * round(steps * (b - a) / (2 * T)))
        t = np.linspace(a, b, n + 1)
        # a segment endpoint sitting on a jump must take the one-sided
        # limit from inside the segment, not whichever branch eval picks
        where = t.copy()
        if a in cuts:
            where[0] = a + 1e-9 * (b - a)
        if b in cuts:
            where[-1] = b - 1e-9 * (b - a)
        y = np.array([np.real(psi.conj() @ h.eval(s) @ psi) for s in where])
        total += scipy.integrate.simpson(y, x=t)
    return float(total)


@dataclass(frozen=True)
class PhaseReport:
    """Per-level phase data of one cyclic evolution.

    theta, beta and holonomy_beta live in [0, 2pi); gamma and beta_raw
    (= theta - gamma before reduction) are unreduced reals. beta equals
    beta_raw mod 2pi by construction.
    """

    theta: np.ndarray
    gamma: np.ndarray
    beta: np.ndarray
    beta_raw: np.ndarray
    holonomy_beta: np.ndarray
    cyclicity_residual: float
    cross_residual: float
    closure_permutation: tuple

    @property
    def dim(self):
        return len(self.theta)

    def as_dict(self):
        return {
            "theta": list(self.theta),
            "gamma": list(self.gamma),
            "beta": list(self.beta),
            "beta_raw": list(self.beta_raw),
            "holonomy_beta": list(self.holonomy_beta),
            "cyclicity_residual": self.cyclicity_residual,
            "cross_residual": self.cross_residual,
            "closure_permutation": list(self.closure_permutation),
        }


def geometric_phases(
    p: Propagator, h: HamiltonianSchedule, X0, tol=CYCLIC_TOL, cross_tol=CROSS_TOL
):
    """Full phase extraction with the holonomy cross-check.

    h must be the schedule the propagator was solved from (the dynamical
    integral reuses it; there is no resampling). Raises NotCyclic when
    the observable does not return, and CrossCheck when the two routes
    to beta disagree beyond cross_tol.
    """
    X0 = np.asarray(X0, dtype=complex)
    cyc = detect_cyclic(p, X0, tol)
    if not cyc.is_cyclic:
        raise NotCyclicError(
            f"observable does not return at T={p.duration:g}: "
            f"residual {cyc.residual:.3e}, permutation {cyc.permutation}"
        )
    obs = from_observable(X0)
    T = p.duration
    steps = p.steps + (p.steps % 2)
    gamma = np.array(
        [dynamical_phase(h, obs.vectors[:, n], T, steps) for n in range(obs.dim)]
    )
    beta_raw = cyc.thetas - gamma
    beta = wrap_angle(beta_raw)

    hol = holonomy(horizontal_lift(lift_from_propagator(p, obs)), tol=max(tol, 1e-9))
    gaps = circular_distance(beta, hol.betas)
    cross = float(np.max(gaps))
    if cross > cross_tol:
        raise CrossCheckError(
            f"phase-difference route and holonomy route disagree: "
            f"max gap {cross:.3e} > {cross_tol:g} (beta {beta}, holonomy {hol.betas})"
        )
    return PhaseReport(
        theta=cyc.thetas,
        gamma=gamma,
        beta=beta,
        beta_raw=beta_raw,
        holonomy_beta=hol.betas,
        cyclicity_residual=cyc.residual,
        cross_residual=cross,
        closure_permutation=hol.permutation,
    )
