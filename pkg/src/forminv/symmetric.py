"""Inversion under the gradient condition ``H = grad P``.

Here ``N_t = grad Q_t`` for a scalar potential ``Q_t = sum_m Q_[m] t**(m-1)``
solving ``dQ_t/dt = 1/2 <grad Q_t, grad Q_t>`` with ``Q_0 = P``, which gives::

    Q_[1] = P
    Q_[m] = 1/(2(m-1)) sum_{k+l=m} <grad Q_[k], grad Q_[l]>

The same recurrence computes formal Legendre transforms, and for homogeneous
potentials with nilpotent Hessian it is the object of the Jacobian-conjecture
scan in :func:`jc_scan`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from gmpy2 import mpq

from .coefficients import GaussianRational
from .errors import PreconditionError, TruncationError
from .inversion import verify_inverse
from .series import (
    FormalMap,
    Poly,
    TruncatedSeries,
    _add_into,
    add,
    equal_mod,
    gradient,
    hessian,
    inner_product,
    is_zero_matrix,
    laplacian,
    mat_power,
    scale,
    sub,
)
from .tgraded import compose_shift, tmatmul

__all__ = [
    "QSequence",
    "compute_Q_sequence",
    "BurgersSolution",
    "burgers_solve",
    "burgers_residual",
    "legendre_transform",
    "half_square_norm",
    "SymmetricIdentityReport",
    "check_symmetric_identities",
    "HessianNilpotencyReport",
    "check_hessian_nilpotency",
    "Verdict",
    "JCVerdict",
    "jc_scan",
]


@dataclass(frozen=True)
class QSequence:
    """``P`` together with ``Q_[1..M]``, known through z-degree ``trunc``."""

    P: TruncatedSeries
    terms: tuple[TruncatedSeries, ...]
    trunc: int

    @property
    def M(self) -> int:
        return len(self.terms)

    def term(self, m: int) -> TruncatedSeries:
        if not 1 <= m <= self.M:
            raise IndexError(f"Q_[{m}] not computed (have 1..{self.M})")
        return self.terms[m - 1]

    def at(self, t0) -> TruncatedSeries:
        """``sum_{m<=M} Q_[m] t0**(m-1)`` (exactness is the caller's concern)."""
        t0 = GaussianRational.coerce(t0)
        acc: dict = {}
        power = GaussianRational.coerce(1)
        for Q in self.terms:
            if not power:
                break
            _add_into(acc, Q._terms, power)
            power = power * t0
        return TruncatedSeries._from_packed(self.P.nvars, self.trunc, acc)


def _check_potential(P: TruncatedSeries) -> None:
    if P.order() < 2:
        raise PreconditionError(f"potential must have order >= 2, got {P.order()}")


def _pair_sum(grads, m: int, trunc: int, n: int) -> dict:
    """Packed terms of ``sum_{k+l=m} <grads[k-1], grads[l-1]>``, using symmetry."""
    acc: dict = {}
    for k in range(1, (m - 1) // 2 + 1):
        gk, gl = grads[k - 1], grads[m - k - 1]
        if gk is None or gl is None:
            continue
        _add_into(acc, inner_product(gk, gl, trunc)._terms, 2)
    if m % 2 == 0:
        g = grads[m // 2 - 1]
        if g is not None:
            _add_into(acc, inner_product(g, g, trunc)._terms)
    return acc


def compute_Q_sequence(P: TruncatedSeries, M: int) -> QSequence:
    """``Q_[1..M]`` by the recurrence, truncated at ``P.trunc``."""
    if M < 1:
        raise ValueError("need at least one t-order")
    _check_potential(P)
    n, D = P.nvars, P.trunc
    zero = TruncatedSeries.zero(n, D)
    if P.is_zero() or D < 2:
        return QSequence(P, tuple([P] + [zero] * (M - 1)), D)
    terms = [P]
    grads = [gradient(P)]
    for m in range(2, M + 1):
        acc = _pair_sum(grads, m, D, n)
        Qm = scale(TruncatedSeries._from_packed(n, D, acc), GaussianRational._raw(mpq(1, 2 * (m - 1))))
        terms.append(Qm)
        grads.append(None if Qm.is_zero() else gradient(Qm))
    return QSequence(P, tuple(terms), D)


def burgers_residual(seq: QSequence) -> list[TruncatedSeries]:
    """``(m-1) Q_[m] - 1/2 sum_{k+l=m} <grad Q_[k], grad Q_[l]>`` for ``m = 2..M``.

    Every ordered pair ``(k, l)`` is summed directly, so this does not share
    the symmetric shortcut used to build the sequence.
    """
    D = seq.trunc
    if D < 2:
        return [TruncatedSeries.zero(seq.P.nvars, D) for _ in range(2, seq.M + 1)]
    grads = [gradient(Q) for Q in seq.terms]
    half = GaussianRational._raw(mpq(1, 2))
    out = []
    for m in range(2, seq.M + 1):
        rhs = TruncatedSeries.zero(seq.P.nvars, D)
        for k in range(1, m):
            rhs = add(rhs, inner_product(grads[k - 1], grads[m - k - 1], D))
        out.append(sub(scale(seq.term(m), m - 1), scale(rhs, half)))
    return out


@dataclass(frozen=True)
class BurgersSolution:
    """t-graded solution of ``dQ/dt = 1/2 <grad Q, grad Q>``, ``Q_0 = P``."""

    seq: QSequence
    residual: tuple[TruncatedSeries, ...]

    @property
    def slices(self) -> tuple[TruncatedSeries, ...]:
        return self.seq.terms

    @property
    def residual_zero(self) -> bool:
        return all(r.is_zero() for r in self.residual)


def burgers_solve(P: TruncatedSeries, M: int) -> BurgersSolution:
    seq = compute_Q_sequence(P, M)
    return BurgersSolution(seq, tuple(burgers_residual(seq)))


def half_square_norm(nvars: int, trunc: int) -> TruncatedSeries:
    """``1/2 sum z_i^2``."""
    half = mpq(1, 2)
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 2
        terms[tuple(e)] = half
    return TruncatedSeries.from_terms(nvars, trunc, terms)


def legendre_transform(f: TruncatedSeries, validate: bool = False) -> TruncatedSeries:
    """Formal Legendre transform of ``f = 1/2 sum z_i^2 - P``.

    Returns ``1/2 sum z_i^2 + Q`` with ``Q = Q_t`` at ``t = 1``; its gradient
    inverts ``grad f``.  The quadratic part of ``f`` must be exactly
    ``1/2 sum z_i^2``, which forces ``o(P) >= 3`` so ``Q_[m]`` has order
    ``>= m + 2`` and ``M = trunc - 1`` slices give every degree up to ``trunc``.

    With ``validate=True`` the defining property is checked and a
    ``ValueError`` raised if ``grad fbar`` fails to invert ``grad f``.
    """
    n, D = f.nvars, f.trunc
    if D < 2:
        raise TruncationError("need the degree-2 part of f to normalize it")
    if f.order() < 2:
        raise PreconditionError("f must have order >= 2")
    quad = half_square_norm(n, D)
    if f.poly.homogeneous_component(2) != quad.poly:
        raise PreconditionError("the quadratic part of f must be 1/2 sum z_i^2")
    P = sub(quad, f)
    seq = compute_Q_sequence(P, max(1, D - 1))
    fbar = add(quad, seq.at(1))
    if validate and D >= 2:
        if not verify_inverse(gradient(f), gradient(fbar)):
            raise ValueError("grad of the Legendre transform does not invert grad f")
    return fbar


@dataclass(frozen=True)
class SymmetricIdentityReport:
    """Slice-wise truth of the three composition identities with ``F_t``.

    ``grad_identity[j]``: t**j slice of ``(grad Q_t)(F_t) = grad P``;
    ``potential_identity[j]``: ``Q_t(F_t) = P - t/2 <grad P, grad P>``;
    ``time_derivative_identity[j]``: ``(dQ_t/dt)(F_t) = 1/2 <grad P, grad P>``.
    """

    grad_identity: tuple[bool, ...]
    potential_identity: tuple[bool, ...]
    time_derivative_identity: tuple[bool, ...]

    @property
    def all_hold(self) -> bool:
        return all(self.grad_identity) and all(self.potential_identity) and all(
            self.time_derivative_identity
        )


def check_symmetric_identities(P: TruncatedSeries, seq: QSequence) -> SymmetricIdentityReport:
    n, D = P.nvars, seq.trunc
    M = seq.M
    if D < 2 or P.is_zero():
        zeros = all(Q.is_zero() for Q in seq.terms)
        return SymmetricIdentityReport((zeros,) * M, (zeros,) * M, (zeros,) * max(M - 1, 0))
    gP = gradient(P)
    W = [-gP]
    half_sq = scale(inner_product(gP, gP, D), GaussianRational._raw(mpq(1, 2)))

    grads = [gradient(Q) for Q in seq.terms]
    grad_ok = []
    comp = [compose_shift([g[i] for g in grads], W, M - 1) for i in range(n)]
    for j in range(M):
        if j == 0:
            grad_ok.append(all(equal_mod(comp[i][0], gP[i]) for i in range(n)))
        else:
            grad_ok.append(all(comp[i][j].is_zero() for i in range(n)))

    pot = compose_shift(list(seq.terms), W, M - 1)
    expected = [P, -half_sq]
    pot_ok = []
    for j in range(M):
        if j < len(expected):
            pot_ok.append(equal_mod(pot[j], expected[j]))
        else:
            pot_ok.append(pot[j].is_zero())

    dt_ok = []
    if M >= 2:
        dQ = [scale(seq.term(m), m - 1) for m in range(2, M + 1)]
        dcomp = compose_shift(dQ, W, M - 2)
        for j in range(M - 1):
            dt_ok.append(equal_mod(dcomp[j], half_sq) if j == 0 else dcomp[j].is_zero())
    return SymmetricIdentityReport(tuple(grad_ok), tuple(pot_ok), tuple(dt_ok))


@dataclass(frozen=True)
class HessianNilpotencyReport:
    """Nilpotent Hessian, harmonicity and nilpotency of ``Hes(Q_t)``, modulo trunc.

    ``laplacian_zero[m-1]`` refers to ``Q_[m]``; ``hes_q_power_zero[j]`` to the
    ``t**j`` slice of ``Hes(Q_t)^k``.
    """

    k: int
    hes_power_zero: bool
    laplacian_zero: tuple[bool, ...]
    hes_q_power_zero: tuple[bool, ...]

    @property
    def all_true(self) -> bool:
        return self.hes_power_zero and all(self.laplacian_zero) and all(self.hes_q_power_zero)

    @property
    def all_false(self) -> bool:
        return not self.hes_power_zero and not all(self.laplacian_zero) and not all(
            self.hes_q_power_zero
        )


def check_hessian_nilpotency(P: TruncatedSeries, seq: QSequence, k: int) -> HessianNilpotencyReport:
    if k < 1:
        raise ValueError("power must be at least 1")
    if seq.trunc < 2:
        return HessianNilpotencyReport(k, True, (True,) * seq.M, (True,) * seq.M)
    hes_zero = is_zero_matrix(mat_power(hessian(P), k))
    lap = tuple(laplacian(Q).is_zero() for Q in seq.terms)
    hs = [hessian(Q) for Q in seq.terms]
    power = hs
    for _ in range(k - 1):
        power = tmatmul(power, hs, seq.M - 1)
    return HessianNilpotencyReport(k, hes_zero, lap, tuple(is_zero_matrix(X) for X in power))


class Verdict(enum.Enum):
    POLYNOMIAL_WITNESSED = "POLYNOMIAL_WITNESSED"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class JCVerdict:
    """Outcome of :func:`jc_scan`.

    ``last_nonzero`` is the largest t-order ``m <= M`` with ``Q_[m] != 0``
    (0 if all vanish).  ``closed`` is set when the zero run covers
    ``last_nonzero + 1 .. 2*last_nonzero``; then every later ``Q_[m]`` is zero
    by the recurrence and ``Q_t`` is provably a polynomial in ``t``.
    """

    verdict: Verdict
    last_nonzero: int
    window: int
    closed: bool
    degree: int
    seq: QSequence = field(repr=False)

    def __str__(self):
        if self.verdict is Verdict.POLYNOMIAL_WITNESSED:
            return f"POLYNOMIAL_WITNESSED({self.last_nonzero})"
        return "UNDECIDED"


def _homogeneous_degree(P: TruncatedSeries) -> int | None:
    degs = {sum(e) for e in P.terms}
    if len(degs) > 1:
        raise PreconditionError("P is not homogeneous")
    return degs.pop() if degs else None


def jc_scan(P: TruncatedSeries, M: int, window: int = 5) -> JCVerdict:
    """Look for a vanishing tail of ``Q_[m]`` for a homogeneous ``P`` with nilpotent Hessian.

    Since ``Q_[m]`` is homogeneous of degree ``(d-2) m + 2``, a zero ``Q_[m]``
    is exact once ``trunc >= (d-2) M + 2``.  A run of ``window`` zeros after
    the last nonzero slice is reported as a witness; it proves polynomiality
    in ``t`` only when ``closed`` is set.  A closed run is reported as a
    witness even when it is shorter than ``window``.
    """
    if M < 1 or window < 1:
        raise ValueError("M and window must be positive")
    d = _homogeneous_degree(P)
    n = P.nvars
    if d is not None:
        if d < 2:
            raise PreconditionError(f"P must have degree >= 2, got {d}")
        if P.trunc < d:
            raise TruncationError("truncation hides P itself")
        exact = TruncatedSeries(P.poly, max(P.trunc, d))
        hes = hessian(exact)
        # Hes(P) is nilpotent iff its n-th power vanishes; entries are exact
        # polynomials because P is homogeneous and fully present
        entries = [[x.poly for x in row] for row in hes]
        if not _poly_matrix_nilpotent(entries, n):
            raise PreconditionError("Hes(P) is not nilpotent")
        need = (d - 2) * M + 2
        if P.trunc < need:
            raise TruncationError(f"need trunc >= {need} for exact Q_[m], m <= {M}")
    seq = compute_Q_sequence(P, M)
    nonzero = [m for m in range(1, M + 1) if not seq.term(m).is_zero()]
    last = nonzero[-1] if nonzero else 0
    closed = M >= 2 * last
    witnessed = closed or M - last >= window
    verdict = Verdict.POLYNOMIAL_WITNESSED if witnessed else Verdict.UNDECIDED
    return JCVerdict(verdict, last, window, closed, d if d is not None else 0, seq)


def _poly_matrix_nilpotent(A: list[list[Poly]], n: int) -> bool:
    power = A
    for _ in range(n - 1):
        power = [
            [sum((power[i][k] * A[k][j] for k in range(n)), Poly.zero(A[0][0].nvars)) for j in range(n)]
            for i in range(n)
        ]
    return all(x.is_zero() for row in power for x in row)
