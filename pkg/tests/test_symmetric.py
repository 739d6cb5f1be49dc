import random
from fractions import Fraction

import pytest

from forminv.coefficients import I
from forminv.errors import PreconditionError, TruncationError
from forminv.inversion import compute_N_sequence, verify_inverse
from forminv.series import TruncatedSeries, gradient
from forminv.symmetric import (
    Verdict,
    burgers_residual,
    burgers_solve,
    check_hessian_nilpotency,
    check_symmetric_identities,
    compute_Q_sequence,
    half_square_norm,
    jc_scan,
    legendre_transform,
)

from oracles import gaussian_power, half_norm_minus, random_potential, random_terms


def S(n, trunc, terms):
    return TruncatedSeries.from_terms(n, trunc, terms)


CUBE = S(1, 8, {(3,): Fraction(1, 3)})


def test_q_sequence_for_cube():
    seq = compute_Q_sequence(CUBE, 4)
    assert list(seq.terms) == [
        CUBE,
        S(1, 8, {(4,): Fraction(1, 2)}),
        S(1, 8, {(5,): 1}),
        S(1, 8, {(6,): Fraction(7, 3)}),
    ]


def test_q_gradient_matches_catalan_terms():
    seq = compute_Q_sequence(CUBE, 6)
    N = compute_N_sequence(gradient(CUBE), 6)
    for m in range(1, 7):
        assert gradient(seq.term(m)) == N.term(m)


def test_harmonic_potentials_are_stationary():
    for d in (3, 4):
        P = gaussian_power(2, 12, d)
        sol = burgers_solve(P, 5)
        assert sol.slices[0] == P
        assert all(q.is_zero() for q in sol.slices[1:])
        assert sol.residual_zero


def test_zero_potential():
    seq = compute_Q_sequence(TruncatedSeries.zero(2, 6), 4)
    assert all(q.is_zero() for q in seq.terms)


def test_low_order_potential_rejected():
    with pytest.raises(PreconditionError):
        compute_Q_sequence(S(1, 5, {(1,): 1, (3,): 1}), 3)


def test_burgers_cube_slices():
    sol = burgers_solve(CUBE, 4)
    assert [q.coefficient((k,)) for q, k in zip(sol.slices, (3, 4, 5, 6))] == [
        Fraction(1, 3), Fraction(1, 2), 1, Fraction(7, 3)
    ]
    assert sol.residual_zero


def test_homogeneous_slices_have_expected_degree():
    rng = random.Random(12)
    for d in (3, 4):
        P = S(2, 14, random_terms(rng, 2, d, d, 0.7))
        seq = compute_Q_sequence(P, 5)
        for m in range(1, 6):
            assert all(sum(e) == (d - 2) * m + 2 for e in seq.term(m).terms)


def test_burgers_residual_on_random_complex_potentials():
    rng = random.Random(13)
    for n in (1, 2, 3):
        terms = {e: c * (I if rng.random() < 0.5 else 1) for e, c in random_terms(rng, n, 2, 4).items()}
        P = S(n, 8, terms)
        assert all(r.is_zero() for r in burgers_residual(compute_Q_sequence(P, 5)))


def test_half_square_norm():
    assert half_square_norm(2, 3) == S(2, 3, {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)})


def test_legendre_examples():
    q = half_square_norm(2, 6)
    assert legendre_transform(q) == q
    f = S(1, 6, {(2,): Fraction(1, 2), (3,): Fraction(-1, 3)})
    assert legendre_transform(f) == S(
        1, 6, {(2,): Fraction(1, 2), (3,): Fraction(1, 3), (4,): Fraction(1, 2), (5,): 1, (6,): Fraction(7, 3)}
    )


def test_legendre_rejects_bad_normalization():
    with pytest.raises(PreconditionError):
        legendre_transform(S(1, 6, {(2,): 1, (3,): 1}))
    with pytest.raises(PreconditionError):
        legendre_transform(S(2, 6, {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2), (1, 1): 1}))
    with pytest.raises(TruncationError):
        legendre_transform(S(1, 1, {}))


def test_legendre_defining_property_and_involution():
    rng = random.Random(14)
    for n in (1, 2, 3):
        f = half_norm_minus(random_potential(rng, n, 7, lo=3, maxdeg=4))
        fbar = legendre_transform(f, validate=True)
        assert verify_inverse(gradient(f), gradient(fbar))
        assert legendre_transform(fbar) == f


def test_symmetric_identities():
    rep = check_symmetric_identities(CUBE, compute_Q_sequence(CUBE, 3))
    assert rep.all_hold
    P = gaussian_power(2, 8, 3)
    rep = check_symmetric_identities(P, compute_Q_sequence(P, 4))
    assert rep.all_hold
    Z = TruncatedSeries.zero(2, 6)
    assert check_symmetric_identities(Z, compute_Q_sequence(Z, 3)).all_hold
    rng = random.Random(15)
    P = random_potential(rng, 2, 7, maxdeg=3)
    assert check_symmetric_identities(P, compute_Q_sequence(P, 4)).all_hold


def test_hessian_nilpotency_examples():
    P = gaussian_power(2, 10, 3)
    assert check_hessian_nilpotency(P, compute_Q_sequence(P, 5), 2).all_true
    P = S(2, 10, {(2, 1): 1})
    rep = check_hessian_nilpotency(P, compute_Q_sequence(P, 5), 2)
    assert not rep.hes_power_zero
    assert not rep.laplacian_zero[0]
    Z = TruncatedSeries.zero(2, 6)
    assert check_hessian_nilpotency(Z, compute_Q_sequence(Z, 3), 2).all_true


def test_jc_scan_examples():
    for d in (3, 4):
        res = jc_scan(gaussian_power(2, 14, d), 6)
        assert res.verdict is Verdict.POLYNOMIAL_WITNESSED
        assert str(res) == "POLYNOMIAL_WITNESSED(1)"
        assert res.closed
    res = jc_scan(TruncatedSeries.zero(2, 4), 4)
    assert str(res) == "POLYNOMIAL_WITNESSED(0)"


def test_jc_scan_preconditions():
    with pytest.raises(PreconditionError):
        jc_scan(S(2, 10, {(2, 1): 1}), 4)
    with pytest.raises(PreconditionError):
        jc_scan(S(2, 10, {(3, 0): 1, (0, 4): 1}), 4)
    with pytest.raises(TruncationError):
        jc_scan(gaussian_power(2, 10, 4), 6)


def test_jc_scan_window_and_closure():
    # Hes((z1 + i z2)^2 z3) cubes to zero while Q_[2] = (z1 + i z2)^4 / 2
    P = S(3, 20, {(2, 0, 1): 1, (1, 1, 1): 2 * I, (0, 2, 1): -1})
    res = jc_scan(P, 2)
    assert res.verdict is Verdict.UNDECIDED and res.last_nonzero == 2
    res = jc_scan(P, 4, window=5)
    assert str(res) == "POLYNOMIAL_WITNESSED(2)" and res.closed
    res = jc_scan(P, 8)
    assert str(res) == "POLYNOMIAL_WITNESSED(2)"
    assert all(q.is_zero() for q in res.seq.terms[2:])
