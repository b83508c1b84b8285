import numpy as np
import pytest
import scipy.linalg

from obsphase.errors import (
    DimensionMismatchError,
    NotHermitianError,
    ScheduleDomainError,
)
from obsphase.hamiltonians import (
    make_constant_z,
    make_rotating,
    make_tabulated,
    make_two_loop,
    make_zero,
)
from obsphase.linalg import sigma_x, sigma_y, sigma_z
from obsphase.propagation import (
    closed_form_rotating,
    exact_constant_propagator,
    exact_rotating_propagator,
    heisenberg_evolve,
    inverse_at,
    solve,
)


def test_constant_field_matches_closed_form():
    T = 2 * np.pi
    p = solve(make_constant_z(1.0), T, steps=10_000)
    q = exact_constant_propagator(1.0, T, steps=10_000)
    # the midpoint generator is the exact constant generator here
    for k in (0, 1, 2500, 10_000):
        assert np.linalg.norm(p.at(k) - q.at(k)) < 1e-8


def test_zero_schedule_gives_identity():
    p = solve(make_zero(3), 1.0, steps=16)
    assert np.allclose(p.unitaries, np.eye(3))


def test_rotating_matches_closed_form():
    p = solve(make_rotating(1.0, 0.0, 2.0), np.pi, steps=10_000)
    assert np.linalg.norm(p.final() - closed_form_rotating(1.0, 0.0, 2.0, np.pi)) < 1e-7


def test_closed_form_rotating_basics():
    assert np.allclose(closed_form_rotating(1.0, 3.0, 2.0, 0.0), np.eye(2))
    # w0 = 0: the two diagonal exponentials combine to exp(i t w1 sigma_z / 2)
    t, w1 = 0.9, 1.3
    U = closed_form_rotating(0.0, w1, 2.0, t)
    assert np.allclose(U, np.diag([np.exp(1j * w1 * t / 2), np.exp(-1j * w1 * t / 2)]))


def test_closed_form_rotating_vs_expm():
    # independent oracle: scipy expm of the two factors
    w0, w1, w, t = 1.0, 0.0, 2.0, np.pi
    H = -0.5 * w0 * sigma_x - 0.5 * (w1 + w) * sigma_z
    ref = scipy.linalg.expm(-1j * w * t / 2 * sigma_z) @ scipy.linalg.expm(-1j * t * H)
    assert np.linalg.norm(closed_form_rotating(w0, w1, w, t) - ref) < 1e-12
    ev = np.linalg.eigvalsh(H)
    assert np.allclose(ev, [-np.sqrt(5) / 2, np.sqrt(5) / 2])


def test_unitarity_drift():
    p = solve(make_rotating(1.0, 3.0, 2.0), np.pi, steps=2000)
    drift = max(
        np.linalg.norm(U.conj().T @ U - np.eye(2)) for U in p.unitaries
    )
    assert drift <= 1e-12


def test_convergence_order_two():
    w0, w1, w = 1.0, 3.0, 2.0
    T = np.pi
    ref = closed_form_rotating(w0, w1, w, T)
    errs = []
    for steps in (256, 512, 1024):
        p = solve(make_rotating(w0, w1, w), T, steps=steps)
        errs.append(np.linalg.norm(p.final() - ref))
    rates = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    for r in rates:
        assert 1.8 <= r <= 2.2


def test_composition_law():
    h = make_rotating(1.0, 3.0, 2.0)
    T = np.pi
    full = solve(h, T, steps=512)
    first = solve(h, T / 2, steps=256)
    second = solve(h.shifted(T / 2), T / 2, steps=256)
    assert np.linalg.norm(second.final() @ first.final() - full.final()) < 1e-8


def test_two_loop_needs_aligned_grid():
    h2 = make_two_loop(make_rotating(1.0, 0.0, 2.0), np.pi)
    solve(h2, 2 * np.pi, steps=64)
    with pytest.raises(ScheduleDomainError):
        solve(h2, 2 * np.pi, steps=63)


def test_solve_input_checks():
    h = make_constant_z(1.0)
    with pytest.raises(ValueError):
        solve(h, 1.0, steps=4)
    with pytest.raises(ValueError):
        solve(h, -1.0, steps=16)
    short = make_tabulated([0.0, 1.0], [np.zeros((2, 2))] * 2)
    with pytest.raises(ScheduleDomainError):
        solve(short, 2.0, steps=16)


def test_inverse_at():
    p = solve(make_rotating(1.0, 3.0, 2.0), np.pi, steps=64)
    assert np.allclose(inverse_at(p, 0), np.eye(2))
    for k in (7, 64):
        assert np.linalg.norm(inverse_at(p, k) @ p.at(k) - np.eye(2)) < 1e-12
    with pytest.raises(IndexError):
        inverse_at(p, 65)
    # constant field: U(0, T/2) = exp(-i mu_B (T/2) sigma_z / 2)
    q = exact_constant_propagator(1.0, 2 * np.pi, steps=16)
    expect = np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)])
    assert np.allclose(inverse_at(q, 8), expect)


def test_heisenberg_evolve_constant_field():
    mu_B = 1.0
    p = exact_constant_propagator(mu_B, 2 * np.pi, steps=128)
    for k in (0, 9, 77):
        t = p.grid[k]
        X = heisenberg_evolve(p, sigma_x, k)
        assert np.linalg.norm(
            X - (np.cos(mu_B * t) * sigma_x + np.sin(mu_B * t) * sigma_y)
        ) < 1e-12


def test_heisenberg_evolve_properties():
    p = solve(make_rotating(1.0, 3.0, 2.0), np.pi, steps=256)
    X0 = sigma_x + 0.3 * sigma_z
    ev0 = np.sort(np.linalg.eigvalsh(X0))
    assert np.allclose(heisenberg_evolve(p, X0, 0), X0)
    assert np.allclose(heisenberg_evolve(p, np.eye(2), 200), np.eye(2))
    for k in (31, 256):
        X = heisenberg_evolve(p, X0, k)
        assert np.linalg.norm(X - X.conj().T) < 1e-10
        assert np.max(np.abs(np.sort(np.linalg.eigvalsh(X)) - ev0)) < 1e-9
    with pytest.raises(NotHermitianError):
        heisenberg_evolve(p, np.array([[0.0, 1.0], [0.0, 0.0]]), 1)
    with pytest.raises(DimensionMismatchError):
        heisenberg_evolve(p, np.eye(3), 1)
