"""Series that depend on a formal parameter ``t``, stored as lists of t-slices.

``A[j]`` is the coefficient of ``t**j``.  Nothing here treats ``t`` as a ring
variable; products are Cauchy convolutions cut at a t-order bound.
"""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .coefficients import GaussianRational
from .series import (
    FormalMap,
    TruncatedSeries,
    add,
    mul,
    partial_derivative,
    scale,
)

TSeries = list  # list[TruncatedSeries], index = power of t


def tzero(nvars: int, trunc: int, torder: int) -> TSeries:
    return [TruncatedSeries.zero(nvars, trunc) for _ in range(torder + 1)]


def tmul(A: Sequence[TruncatedSeries], B: Sequence[TruncatedSeries], torder: int, trunc: int) -> TSeries:
    nvars = A[0].nvars
    out = []
    for j in range(torder + 1):
        acc = TruncatedSeries.zero(nvars, trunc)
        for a in range(max(0, j - len(B) + 1), min(j, len(A) - 1) + 1):
            x, y = A[a], B[j - a]
            if x.is_zero() or y.is_zero():
                continue
            acc = add(acc, mul(x, y, trunc))
        out.append(acc)
    return out


def tmatmul(A, B, torder: int, trunc: int | None = None):
    """Product of t-graded matrices, each given as a list of matrices by t-order."""
    n = len(A[0])
    if trunc is None:
        trunc = min(x.trunc for M in (A[0], B[0]) for row in M for x in row)
    nvars = A[0][0][0].nvars
    out = []
    for j in range(torder + 1):
        rows = [[TruncatedSeries.zero(nvars, trunc) for _ in range(n)] for _ in range(n)]
        for a in range(max(0, j - len(B) + 1), min(j, len(A) - 1) + 1):
            X, Y = A[a], B[j - a]
            for i in range(n):
                for l in range(n):
                    acc = rows[i][l]
                    for k in range(n):
                        if X[i][k].is_zero() or Y[k][l].is_zero():
                            continue
                        acc = add(acc, mul(X[i][k], Y[k][l], trunc))
                    rows[i][l] = acc
        out.append(tuple(tuple(r) for r in rows))
    return out


def substitute_shift(U: TruncatedSeries, W: Sequence[FormalMap], torder: int) -> TSeries:
    """t-slices ``0..torder`` of ``U(z + sum_b t**b W[b-1](z))``.

    Uses the Taylor expansion ``sum_alpha (d^alpha U)(z) W^alpha / alpha!``;
    every ``W[b]`` must have positive z-order so that the terms dropped by
    differentiating are made up by the powers of ``W``.
    """
    n = U.nvars
    trunc = min([U.trunc] + [w.trunc for w in W])
    wt = []
    for i in range(n):
        comps = [TruncatedSeries.zero(n, trunc)]
        comps += [W[b][i] if b < len(W) else TruncatedSeries.zero(n, trunc) for b in range(torder)]
        wt.append(comps)
    out = tzero(n, trunc, torder)
    out[0] = U.with_trunc(trunc)
    one = TruncatedSeries.constant(n, trunc)
    # (alpha, first index allowed to grow, d^alpha U, W^alpha, alpha!)
    stack = [((0,) * n, 0, U, [one] + [TruncatedSeries.zero(n, trunc)] * torder, 1)]
    while stack:
        alpha, start, deriv, power, fact = stack.pop()
        size = sum(alpha)
        if size >= torder or size >= trunc:
            continue
        for j in range(start, n):
            d = partial_derivative(deriv, j)
            if d.is_zero():
                continue
            p = tmul(power, wt[j], torder, trunc)
            if all(x.is_zero() for x in p):
                continue
            child = alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]
            cfact = fact * child[j]
            weight = GaussianRational._raw(mpq(1, cfact))
            for t in range(size + 1, torder + 1):
                if not p[t].is_zero():
                    out[t] = add(out[t], scale(mul(d, p[t], trunc), weight))
            stack.append((child, j, d, p, cfact))
    return out


def compose_shift(A: Sequence[TruncatedSeries], W: Sequence[FormalMap], torder: int) -> TSeries:
    """t-slices of ``sum_a t**a A[a](z + sum_b t**b W[b-1](z))``."""
    n = A[0].nvars
    pieces = []
    for a, Aa in enumerate(A[: torder + 1]):
        pieces.append((a, substitute_shift(Aa, W, torder - a)))
    trunc = min(x.trunc for _, p in pieces for x in p)
    out = tzero(n, trunc, torder)
    for a, p in pieces:
        for j, x in enumerate(p):
            out[a + j] = add(out[a + j], x)
    return out
