import math

import mpmath as mp
import numpy as np
import pytest

from _oracles import beta_quadrature, gamma_tail_quadrature
from matgamma.analysis import (
    TRUNCATION_CUTOFF,
    beta,
    cond_gamma,
    frechet_gamma,
    gamma_norm_bound,
    perturbation_bound,
    spouge_rel_bound,
    tail_bound,
    truncation_bound,
)
from matgamma.errors import PreconditionError
from matgamma.harness import gallery
from matgamma.schur_parlett import gamma

EULER_GAMMA = 0.5772156649015329


# ---------------------------------------------------------------- tail


def test_tail_bound_scalar_is_tight():
    rep = tail_bound(np.array([[1.0]]), 2.0)
    assert rep.evaluable
    assert rep.value == pytest.approx(math.exp(-2.0), rel=1e-14)


def test_tail_bound_diagonal_two_terms():
    # alpha = 2 and a unit nilpotent weight leave gamma(2,1) + gamma(3,1)
    rep = tail_bound(np.diag([1.0, 2.0]), 1.0)
    assert rep.value == pytest.approx(7.0 / math.e, rel=1e-13)
    assert rep.value == pytest.approx(2.5751560882000963, rel=1e-13)
    assert len(rep.per_term) == 2
    assert rep.inputs["alpha"] == pytest.approx(2.0)


def test_tail_bound_requires_unit_split_point():
    with pytest.raises(PreconditionError):
        tail_bound(np.eye(2), 0.5)


def test_tail_bound_requires_right_half_spectrum():
    with pytest.raises(PreconditionError):
        tail_bound(np.diag([-1.0, 2.0]), 1.0)


def test_tail_bound_dominates_quadrature():
    a = gallery("lehmer", 4)
    for r in (1.0, 2.0):
        rep = tail_bound(a, r)
        observed = np.linalg.norm(gamma_tail_quadrature(a, r), 2)
        assert rep.value >= observed - 1e-12


def test_tail_bound_report_shape():
    rep = tail_bound(np.eye(3) * 1.5, 1.0)
    d = rep.as_dict()
    assert d["kind"] == "TailBound"
    assert isinstance(d["value"], float)
    assert d["inputs"]["r"] == 1.0
    assert len(d["per_term"]) == 3


# ---------------------------------------------------------------- norm


def test_norm_bound_not_evaluable_when_shifted_order_hits_zero():
    rep = gamma_norm_bound(np.diag([1.5, 1.5, 1.5]))
    assert not rep.evaluable
    assert rep.value is None
    assert "k=2" in rep.reason
    assert rep.as_dict()["value"] == "not evaluable"


def test_norm_bound_dominates_gamma_norm():
    a = np.diag([5.0, 6.0])
    rep = gamma_norm_bound(a)
    assert rep.evaluable
    assert rep.value >= np.linalg.norm(gamma(a), 2)


# -------------------------------------------------------- perturbation


def test_perturbation_bound_zero_direction():
    rep = perturbation_bound(np.eye(3), np.zeros((3, 3)))
    assert rep.value == 0.0


def test_perturbation_bound_not_evaluable_for_large_mu():
    rep = perturbation_bound(np.diag([3.0, 3.0]), np.eye(2) * 1e-6)
    assert not rep.evaluable
    assert "mu" in rep.reason


def test_perturbation_bound_dominates_observation(rng):
    for _ in range(10):
        n = 3
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h /= np.linalg.norm(h, 1)
        a = np.eye(n) + 0.3 * h
        e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        e *= 1e-6 / np.linalg.norm(e, 1)
        rep = perturbation_bound(a, e)
        assert rep.evaluable
        observed = np.linalg.norm(gamma(a + e) - gamma(a), 1)
        assert observed <= rep.value


def test_perturbation_bound_norm_flavours():
    a = np.eye(2) * 1.1
    e = np.full((2, 2), 1e-8)
    for norm in ("one", "two", "inf"):
        rep = perturbation_bound(a, e, norm=norm)
        assert rep.evaluable and rep.value > 0.0
    with pytest.raises(PreconditionError):
        perturbation_bound(a, e, norm="nuclear")


def test_perturbation_bound_shape_check():
    with pytest.raises(PreconditionError):
        perturbation_bound(np.eye(2), np.zeros((3, 3)))


# ---------------------------------------------------------- truncation


def test_truncation_bound_reference_value():
    rep = truncation_bound(33)
    assert 1.10e-17 <= rep.value <= 1.16e-17
    assert rep.value == pytest.approx(1.1294429894349269e-17, rel=1e-12)


def test_truncation_bound_decreases_with_order():
    values = [truncation_bound(m).value for m in (5, 10, 20, 33, 50)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_truncation_bound_against_high_precision_sum():
    m = 10
    with mp.workdps(50):
        want = mp.mpf(4) / mp.pi**2 * mp.fsum(
            mp.sqrt(mp.factorial(p + m))
            / (mp.factorial(m + 1) * mp.factorial(p - 1))
            for p in range(1, TRUNCATION_CUTOFF + 1)
        )
        want = float(want)
    assert truncation_bound(m).value == pytest.approx(want, rel=1e-10)


def test_truncation_bound_domain():
    with pytest.raises(PreconditionError):
        truncation_bound(0)


# ------------------------------------------------------- spouge bound


def test_spouge_rel_bound_reference_value():
    assert spouge_rel_bound(1.0, 1.0, 12.5) == pytest.approx(
        7.47113481447423e-11, rel=1e-12
    )


def test_spouge_rel_bound_scalings():
    base = spouge_rel_bound(1.0, 1.0, 12.5)
    assert spouge_rel_bound(10.0, 1.0, 12.5) == pytest.approx(10.0 * base, rel=1e-13)
    assert spouge_rel_bound(1.0, 2.0, 12.5) < base
    with pytest.raises(PreconditionError):
        spouge_rel_bound(0.5, 1.0, 12.5)
    with pytest.raises(PreconditionError):
        spouge_rel_bound(1.0, -1.0, 12.5)
    with pytest.raises(PreconditionError):
        spouge_rel_bound(1.0, 1.0, 2.0)


# ----------------------------------------------------------------- beta


def test_beta_identity_arguments():
    assert np.allclose(beta(np.eye(2), np.eye(2)), np.eye(2), atol=1e-12)


def test_beta_integer_scalars():
    got = beta(2.0 * np.eye(3), 3.0 * np.eye(3))
    assert np.allclose(got, np.eye(3) / 12.0, rtol=1e-11)


def test_beta_symmetry_for_commuting_pair():
    a = np.diag([1.5, 2.5]).astype(complex)
    b = np.diag([2.0, 1.25]).astype(complex)
    assert np.allclose(beta(a, b), beta(b, a), rtol=1e-11)


def test_beta_against_quadrature_for_commuting_pair():
    a = np.diag([1.5, 2.5]).astype(complex)
    b = np.diag([2.0, 1.25]).astype(complex)
    want = beta_quadrature(a, b)
    assert np.allclose(beta(a, b), want, rtol=1e-6, atol=1e-9)


def test_beta_shape_check():
    with pytest.raises(PreconditionError):
        beta(np.eye(2), np.eye(3))


# -------------------------------------------------------------- frechet


def test_frechet_at_identity_is_minus_gamma_times_direction(rng):
    e = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    got = frechet_gamma(np.eye(3), e)
    want = -EULER_GAMMA * e
    assert np.linalg.norm(got - want) <= 1e-8 * np.linalg.norm(want)


def test_frechet_zero_direction():
    assert np.array_equal(frechet_gamma(np.eye(2), np.zeros((2, 2))), np.zeros((2, 2)))


def test_frechet_linearity(rng):
    a = np.diag([1.2, 2.7]).astype(complex)
    a[0, 1] = 0.5
    e = rng.standard_normal((2, 2))
    one = frechet_gamma(a, e)
    two = frechet_gamma(a, 2.0 * e)
    assert np.allclose(two, 2.0 * one, rtol=1e-11)


def test_frechet_matches_finite_difference(rng):
    a = np.array(
        [
            [1.2, 0.3, 0.0, 0.1],
            [0.0, 2.1, 0.2, 0.0],
            [0.1, 0.0, 3.3, 0.4],
            [0.0, 0.2, 0.0, 1.7],
        ],
        dtype=complex,
    )
    e = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    e /= np.linalg.norm(e)
    got = frechet_gamma(a, e)
    h = 1e-6
    fd = (gamma(a + h * e) - gamma(a)) / h
    assert np.linalg.norm(fd - got) <= 1e-5 * np.linalg.norm(got)


def test_frechet_shape_check():
    with pytest.raises(PreconditionError):
        frechet_gamma(np.eye(2), np.zeros((3, 3)))


# ----------------------------------------------------------------- cond


def test_cond_at_identity():
    # cond(I) = gamma_Euler: Gamma(I) = I and L(I, E) = -gamma E
    assert cond_gamma(np.eye(3)) == pytest.approx(EULER_GAMMA, rel=0.05)


def test_cond_scalar_five():
    # |gamma'(5)| * 5 / gamma(5) = 5 psi(5)
    want = 7.530588342159
    assert cond_gamma(np.array([[5.0]])) == pytest.approx(want, rel=0.05)


def test_cond_start_direction_override(rng):
    a = np.diag([1.3, 2.2]).astype(complex)
    base = cond_gamma(a)
    other = cond_gamma(a, start=np.full((2, 2), 0.7))
    assert other == pytest.approx(base, rel=1e-3)
    with pytest.raises(PreconditionError):
        cond_gamma(a, start=np.ones((3, 3)))
