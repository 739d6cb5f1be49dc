"""Formal inversion of ``F(z) = z - H(z)`` through the deformation ``F_t = z - t H``.

The inverse of ``F_t`` is ``G_t = z + t N_t`` with ``N_t = sum_m N_[m] t**(m-1)``.
``N_t`` solves ``dN_t/dt = JN_t . N_t`` with ``N_0 = H``; comparing t-coefficients
gives the recurrence used by :func:`compute_N_sequence`::

    N_[1] = H
    (m-1) N_[m] = sum_{k+l=m} JN_[k] . N_[l]

The parameter ``t`` is never a ring variable: everything t-dependent is a list
indexed by t-order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .coefficients import ONE, GaussianRational
from .errors import DimensionError, PreconditionError, TruncationError
from .series import (
    FormalMap,
    TruncatedSeries,
    _add_into,
    _same_nvars,
    equal_mod,
    gradient,
    inner_product,
    is_zero_matrix,
    jacobian,
    mat_mul,
    mat_power,
    mat_vec,
    mul,
    scale,
    trace,
)
from .tgraded import compose_shift, substitute_shift, tmatmul

__all__ = [
    "NSequence",
    "compute_N_sequence",
    "assemble_inverse",
    "forward_map",
    "verify_inverse",
    "composition_defects",
    "cauchy_residual",
    "check_composition_identity",
    "check_main_equation",
    "NilpotencyReport",
    "check_nilpotency_equivalence",
    "shifted_inverse_pair",
    "transport",
    "transport_residual",
]


@dataclass(frozen=True)
class NSequence:
    """``H`` together with ``N_[1..M]``, all known through z-degree ``trunc``."""

    H: FormalMap
    terms: tuple[FormalMap, ...]
    trunc: int

    @property
    def M(self) -> int:
        return len(self.terms)

    @property
    def nvars(self) -> int:
        return self.H.nvars

    def term(self, m: int) -> FormalMap:
        """``N_[m]`` (1-based, matching the t-grading)."""
        if not 1 <= m <= self.M:
            raise IndexError(f"N_[{m}] not computed (have 1..{self.M})")
        return self.terms[m - 1]

    def exact_degree(self, t0) -> int:
        """Highest z-degree at which ``sum_{m<=M} N_[m] t0**(m-1)`` equals ``N_{t0}``."""
        t0 = GaussianRational.coerce(t0)
        if not t0 or self.H.is_zero():
            return self.trunc
        if self.H.order() < 2:
            raise PreconditionError(
                "o(H) = 1: N_t is not z-degree-finite in t, refusing to evaluate at t != 0"
            )
        # N_[m] has order >= m+1, so the omitted m > M start at degree M+2
        return min(self.trunc, self.M + 1)

    def at(self, t0, degree: int | None = None) -> FormalMap:
        """``N_{t0}(z)`` through z-degree ``degree`` (default: all that is exact)."""
        t0 = GaussianRational.coerce(t0)
        exact = self.exact_degree(t0)
        if degree is None:
            degree = exact
        elif degree > exact:
            raise TruncationError(
                f"N_t at t={t0} is exact only through degree {exact} with M={self.M}; "
                f"need more t-orders for degree {degree}"
            )
        n = self.nvars
        acc = [dict() for _ in range(n)]
        power = ONE
        for N in self.terms:
            if not power:
                break
            for i, c in enumerate(N):
                _add_into(acc[i], c._terms, power)
            power = power * t0
        return FormalMap(TruncatedSeries._from_packed(n, degree, a) for a in acc)


def _check_order_one(H: FormalMap) -> None:
    for i, h in enumerate(H):
        if h.order() < 1:
            raise PreconditionError(f"component {i} of H has a nonzero constant term")


def compute_N_sequence(H: FormalMap, M: int) -> NSequence:
    """``N_[1..M]`` by the recurrence, truncated at ``H.trunc``.

    Each ``JN_[k]`` is only known to degree ``trunc - 1``, but ``N_[l]`` has
    order at least one, so ``JN_[k] . N_[l]`` is still exact through ``trunc``.
    """
    if M < 1:
        raise ValueError("need at least one t-order")
    _check_order_one(H)
    n, D = H.nvars, H.trunc
    if H.is_zero() or D == 0:
        zero = FormalMap.zero(n, D)
        return NSequence(H, tuple([H] + [zero] * (M - 1)), D)
    terms = [H]
    jacs = [jacobian(H)]
    for m in range(2, M + 1):
        acc = [dict() for _ in range(n)]
        for k in range(1, m):
            Nl = terms[m - k - 1]
            if Nl.is_zero() or terms[k - 1].is_zero():
                continue
            J = jacs[k - 1]
            for i in range(n):
                for j in range(n):
                    if J[i][j].is_zero() or Nl[j].is_zero():
                        continue
                    _add_into(acc[i], mul(J[i][j], Nl[j], D)._terms)
        factor = GaussianRational._raw(mpq(1, m - 1))
        Nm = FormalMap(
            scale(TruncatedSeries._from_packed(n, D, a), factor) for a in acc
        )
        terms.append(Nm)
        jacs.append(jacobian(Nm))
    return NSequence(H, tuple(terms), D)


def forward_map(H: FormalMap, t=1) -> FormalMap:
    """``F_t(z) = z - t H(z)``."""
    return FormalMap.identity(H.nvars, H.trunc) - H.scale(t)


def assemble_inverse(seq: NSequence, t0=1) -> FormalMap:
    """``G_{t0}(z) = z + t0 N_{t0}(z)``, truncated where it stops being exact.

    With ``t0 = 1`` this is the formal inverse of ``z - H``.  Terms beyond
    z-degree ``M + 1`` need more t-orders, so the result's truncation is
    ``min(seq.trunc, M + 1)`` when ``t0 != 0``.
    """
    t0 = GaussianRational.coerce(t0)
    n = seq.nvars
    if not t0:
        return FormalMap.identity(n, seq.trunc)
    N = seq.at(t0)
    return FormalMap.identity(n, N.trunc) + N.scale(t0)


def composition_defects(F: FormalMap, G: FormalMap) -> tuple[FormalMap, FormalMap]:
    """``(G o F - z, F o G - z)`` modulo the shared truncation."""
    if len(F) != len(G):
        raise DimensionError(f"maps with {len(F)} and {len(G)} components")
    n = _same_nvars(F, G)
    D = min(F.trunc, G.trunc)
    F, G = F.with_trunc(D), G.with_trunc(D)
    ident = FormalMap.identity(n, D)
    return G.compose(F) - ident, F.compose(G) - ident


def verify_inverse(F: FormalMap, G: FormalMap) -> bool:
    """True iff ``G o F = z`` and ``F o G = z`` through the shared truncation."""
    left, right = composition_defects(F, G)
    return left.is_zero() and right.is_zero()


def cauchy_residual(seq: NSequence) -> list[FormalMap]:
    """``(m-1) N_[m] - sum_{k+l=m} JN_[k] N_[l]`` for ``m = 2..M``.

    Recomputed from the stored terms with matrix-vector products, independently
    of the accumulation loop in :func:`compute_N_sequence`.
    """
    D, n = seq.trunc, seq.nvars
    out = []
    if D == 0:
        return [FormalMap.zero(n, 0) for _ in range(2, seq.M + 1)]
    jacs = [jacobian(N) for N in seq.terms]
    for m in range(2, seq.M + 1):
        rhs = FormalMap.zero(n, D)
        for k in range(1, m):
            rhs = rhs + mat_vec(jacs[k - 1], seq.term(m - k), D)
        out.append(seq.term(m).scale(m - 1) - rhs)
    return out


def check_composition_identity(seq: NSequence, torder: int | None = None) -> list[bool]:
    """Slice-wise check of ``N_t(F_t(z)) = H(z)`` for t-orders ``0..torder``."""
    if torder is None:
        torder = seq.M - 1
    n = seq.nvars
    W = [-seq.H]
    slices = []
    for i in range(n):
        A = [N[i] for N in seq.terms]
        slices.append(compose_shift(A, W, torder))
    ok = []
    for j in range(torder + 1):
        if j == 0:
            ok.append(all(equal_mod(slices[i][0], seq.H[i]) for i in range(n)))
        else:
            ok.append(all(slices[i][j].is_zero() for i in range(n)))
    return ok


def check_main_equation(seq: NSequence, torder: int | None = None) -> list[bool]:
    """Slice-wise check of ``JN_t(F_t) = sum_k (JH)^k t^(k-1)``.

    Entry ``j`` compares the ``t**j`` coefficient with ``(JH)^(j+1)``.
    """
    if torder is None:
        torder = seq.M - 1
    n = seq.nvars
    W = [-seq.H]
    jacs = [jacobian(N) for N in seq.terms]
    composed = [
        [compose_shift([J[i][l] for J in jacs], W, torder) for l in range(n)] for i in range(n)
    ]
    JH = jacs[0]
    power = JH
    ok = []
    for j in range(torder + 1):
        ok.append(
            all(equal_mod(composed[i][l][j], power[i][l]) for i in range(n) for l in range(n))
        )
        power = mat_mul(power, JH)
    return ok


@dataclass(frozen=True)
class NilpotencyReport:
    """Three views of nilpotency, all modulo the truncation degree.

    ``trace_zero[j]`` and ``jn_power_zero[j]`` refer to the ``t**j`` slice of
    ``Tr JN_t`` and ``(JN_t)^k`` respectively.
    """

    k: int
    jh_power_zero: bool
    trace_zero: tuple[bool, ...]
    jn_power_zero: tuple[bool, ...]

    @property
    def consistent(self) -> bool:
        # (JH)^k = 0 exactly when every t-slice of (JN_t)^k vanishes
        return self.jh_power_zero == all(self.jn_power_zero)


def check_nilpotency_equivalence(H: FormalMap, seq: NSequence, k: int) -> NilpotencyReport:
    if k < 1:
        raise ValueError("power must be at least 1")
    if seq.trunc == 0:
        return NilpotencyReport(k, True, (True,) * seq.M, (True,) * seq.M)
    JH = jacobian(H)
    jh_zero = is_zero_matrix(mat_power(JH, k))
    jacs = [jacobian(N) for N in seq.terms]
    traces = tuple(trace(J).is_zero() for J in jacs)
    torder = seq.M - 1
    power = jacs
    for _ in range(k - 1):
        power = tmatmul(power, jacs, torder)
    return NilpotencyReport(k, jh_zero, traces, tuple(is_zero_matrix(P) for P in power))


def shifted_inverse_pair(seq: NSequence, s, t0, degree: int | None = None):
    """``U = z - s N_{t0}`` and its inverse ``V = z + s N_{t0+s}``.

    Both are returned through z-degree ``degree`` (default: the largest degree
    at which both are exact).
    """
    s = GaussianRational.coerce(s)
    t0 = GaussianRational.coerce(t0)
    n = seq.nvars
    if not seq.H.is_zero() and seq.H.order() < 2:
        raise PreconditionError("shifted inverses need o(H) >= 2")
    if degree is None:
        degree = min(seq.exact_degree(t0), seq.exact_degree(t0 + s))
    ident = FormalMap.identity(n, degree)
    if not s:
        return ident, ident
    U = ident - seq.at(t0, degree).scale(s)
    V = ident + seq.at(t0 + s, degree).scale(s)
    return U, V


def transport(U: TruncatedSeries, seq: NSequence, M: int) -> list[TruncatedSeries]:
    """t-slices ``0..M`` of ``U(z + t N_t(z))``."""
    if M > seq.M:
        raise TruncationError(f"need N_[1..{M}], have 1..{seq.M}")
    if U.nvars != seq.nvars:
        raise DimensionError("U and N_t live in different dimensions")
    return substitute_shift(U, list(seq.terms[:M]), M)


def transport_residual(slices: Sequence[TruncatedSeries], seq: NSequence) -> list[TruncatedSeries]:
    """``(j+1) U_[j+1] - sum_{a+b=j} <grad U_[a], N_[b+1]>`` for each available j.

    Zero everywhere exactly when the slices solve ``dU_t/dt = <grad U_t, N_t>``.
    """
    out = []
    if not slices or slices[0].trunc == 0:
        return out
    grads = [gradient(u) for u in slices]
    for j in range(len(slices) - 1):
        trunc = min(slices[j + 1].trunc, grads[0].trunc + 1)
        acc = scale(slices[j + 1], j + 1).with_trunc(trunc)
        for a in range(j + 1):
            b = j - a
            if b >= seq.M:
                continue
            acc = acc - inner_product(grads[a], seq.term(b + 1), trunc)
        out.append(acc)
    return out
