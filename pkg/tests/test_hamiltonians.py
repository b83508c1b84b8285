import numpy as np
import pytest

from obsphase.errors import (
    DimensionMismatchError,
    NotHermitianError,
    ScheduleDomainError,
    ZeroFieldError,
    ZeroFrequencyError,
)
from obsphase.hamiltonians import (
    make_block_two_qubit,
    make_constant_z,
    make_quadratic_warp,
    make_reversed,
    make_rotating,
    make_tabulated,
    make_two_loop,
    make_zero,
)
from obsphase.linalg import hermitian_eig, is_hermitian, sigma_x, sigma_y, sigma_z


def test_constant_z_values():
    h = make_constant_z(2.0)
    assert np.allclose(h.eval(0.7), -sigma_z)
    assert np.allclose(h.eval(0.0), h.eval(5.0))
    dec = hermitian_eig(make_constant_z(1.0).eval(0.0))
    assert np.allclose(dec.values, [-0.5, 0.5])


def test_constant_z_rejects_zero_field():
    with pytest.raises(ZeroFieldError):
        make_constant_z(0.0)


def test_rotating_at_zero():
    h = make_rotating(1.0, 0.0, 2.0)
    assert np.allclose(h.eval(0.0), -sigma_x / 2)


def test_rotating_periodicity():
    h = make_rotating(1.3, 0.4, 2.0)
    for t in (0.0, 0.31, 1.7):
        assert np.linalg.norm(h.eval(t) - h.eval(t + np.pi)) < 1e-12


def test_rotating_direct_substitution():
    h = make_rotating(1.0, 3.0, 2.0)
    assert np.allclose(h.eval(np.pi / 4), -(sigma_y + 3 * sigma_z) / 2)


def test_rotating_rejects_zero_frequency():
    with pytest.raises(ZeroFrequencyError):
        make_rotating(1.0, 0.0, 0.0)


def test_hermiticity_sampled():
    rng = np.random.default_rng(13)
    h1 = make_rotating(0.8, 1.1, 3.0)
    h2 = make_two_loop(h1, 2 * np.pi / 3.0)
    h3 = make_block_two_qubit(make_constant_z(1.0), h1)
    for t in rng.uniform(0.0, 2 * np.pi / 3.0, size=100):
        for h in (h1, h2, h3):
            assert is_hermitian(h.eval(t), tol=1e-12)


def test_reversed_operator_identity():
    h = make_rotating(1.0, 3.0, 2.0)
    T = np.pi
    r = make_reversed(h, T)
    for t in (0.0, 0.2, 1.1, T):
        assert np.array_equal(r.eval(t), -h.eval(T - t))


def test_two_loop_branches_and_breakpoint():
    h = make_rotating(1.0, 3.0, 2.0)
    T = np.pi
    h2 = make_two_loop(h, T)
    assert h2.domain == (0.0, 2 * T)
    assert h2.breakpoints == (T,)
    for t in (0.0, 0.4, T - 1e-9):
        assert np.array_equal(h2.eval(t), h.eval(t))
    for t in (T, T + 0.4, 2 * T):
        assert np.array_equal(h2.eval(t), -h.eval(2 * T - t))
    # the defining reversal relation h(t+T) = -h(T-t)
    for t in (0.0, 0.3, 1.2):
        assert np.allclose(h2.eval(t + T), -h2.eval(T - t - 1e-15), atol=1e-12)


def test_domain_checks():
    h = make_two_loop(make_rotating(1.0, 0.0, 2.0), np.pi)
    with pytest.raises(ScheduleDomainError):
        h.eval(-0.5)
    with pytest.raises(ScheduleDomainError):
        h.eval(2 * np.pi + 0.1)
    bounded = make_tabulated([0.0, 1.0], [np.eye(2), np.eye(2)])
    with pytest.raises(ScheduleDomainError):
        make_two_loop(bounded, 2.0)


def test_block_two_qubit():
    h = make_block_two_qubit(make_zero(2), make_constant_z(1.0))
    assert np.allclose(h.eval(0.3), np.diag([0.0, 0.0, -0.5, 0.5]))
    hc = make_constant_z(2.0)
    same = make_block_two_qubit(hc, hc)
    P0 = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
    H = same.eval(1.0)
    assert np.allclose(H @ P0, P0 @ H)
    with pytest.raises(DimensionMismatchError):
        make_block_two_qubit(make_zero(2), make_zero(3))


def test_shifted():
    h = make_rotating(1.0, 3.0, 2.0)
    s = h.shifted(0.7)
    for u in (0.0, 0.5, 2.0):
        assert np.array_equal(s.eval(u), h.eval(u + 0.7))
    h2 = make_two_loop(h, np.pi)
    s2 = h2.shifted(np.pi)
    assert s2.breakpoints == (0.0,)


def test_tabulated_interpolation():
    times = [0.0, 1.0, 3.0]
    samples = [np.zeros((2, 2)), sigma_z, 3 * sigma_z]
    h = make_tabulated(times, samples)
    assert np.allclose(h.eval(0.5), 0.5 * sigma_z)
    assert np.allclose(h.eval(2.0), 2.0 * sigma_z)
    assert np.allclose(h.eval(3.0), 3 * sigma_z)
    with pytest.raises(NotHermitianError):
        make_tabulated([0.0, 1.0], [np.array([[0.0, 1.0], [0.0, 0.0]])] * 2)
    with pytest.raises(ValueError):
        make_tabulated([0.0, 0.0], [np.eye(2)] * 2)


def test_warped_quadratic():
    h = make_rotating(1.0, 3.0, 2.0)
    T = np.pi
    w = make_quadratic_warp(h, T)
    assert w.domain == (0.0, T)
    for u in (0.1, 1.0, 2.5):
        assert np.allclose(w.eval(u), (2 * u / T) * h.eval(u * u / T))


def test_zero_schedule():
    h = make_zero(3)
    assert np.allclose(h.eval(12.3), np.zeros((3, 3)))
