"""Sparse multivariate polynomials and power series truncated by total degree.

Monomials are packed into a single Python int::

    key = deg << (SHIFT*n) | e_0 << (SHIFT*(n-1)) | ... | e_{n-1}

so multiplying monomials is integer addition, the truncation test is one
comparison, and sorting keys gives graded-lexicographic order.  Variables are
indexed from 0 in this API; ``str()`` prints them as ``z1 .. zn``.

Truncation is pessimistic: ``mul`` keeps ``min`` of the operand truncations and
each derivative lowers it by one.  Callers that know an operand has positive
order may ask ``mul`` for more, up to the sound bound
``min(trunc_a + o(b), trunc_b + o(a))``.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from .coefficients import ONE, ZERO, GaussianRational
from .errors import DimensionError, PreconditionError, TruncationError

__all__ = [
    "Poly",
    "TruncatedSeries",
    "FormalMap",
    "add",
    "sub",
    "mul",
    "scale",
    "partial_derivative",
    "gradient",
    "inner_product",
    "jacobian",
    "hessian",
    "laplacian",
    "compose",
    "order",
    "homogeneous_component",
    "equal_mod",
    "mat_mul",
    "mat_vec",
    "mat_power",
    "trace",
    "transpose",
    "is_zero_matrix",
    "is_symmetric",
]

SHIFT = 24
MASK = (1 << SHIFT) - 1
INF = math.inf

_coerce = GaussianRational.coerce
_gr = GaussianRational._raw


# --------------------------------------------------------------------------
# packed-monomial helpers


def _pack(exps: Sequence[int]) -> int:
    n = len(exps)
    key = 0
    total = 0
    for e in exps:
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        key = (key << SHIFT) | e
        total += e
    return (total << (SHIFT * n)) | key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & MASK
        key >>= SHIFT
    return tuple(out)


def _deg(key: int, n: int) -> int:
    return key >> (SHIFT * n)


def _grouped(terms: Mapping[int, GaussianRational], n: int):
    """Terms bucketed by total degree, ascending: ``[(deg, [(key, re, im)])]``."""
    shift = SHIFT * n
    buckets: dict[int, list] = {}
    for k, c in terms.items():
        buckets.setdefault(k >> shift, []).append((k, c.re, c.im))
    return sorted(buckets.items())


def _is_real(groups) -> bool:
    return all(not im for _, items in groups for _, _, im in items)


def _mul_grouped(ga, gb, maxdeg: int) -> dict[int, GaussianRational]:
    if not ga or not gb:
        return {}
    acc_re: dict[int, object] = {}
    if _is_real(ga) and _is_real(gb):
        get = acc_re.get
        for da, items_a in ga:
            if da + gb[0][0] > maxdeg:
                break
            for db, items_b in gb:
                if da + db > maxdeg:
                    break
                for ka, ra, _ in items_a:
                    for kb, rb, _ in items_b:
                        k = ka + kb
                        v = get(k)
                        acc_re[k] = ra * rb if v is None else v + ra * rb
        return {k: _gr(v) for k, v in acc_re.items() if v}
    acc_im: dict[int, object] = {}
    for da, items_a in ga:
        if da + gb[0][0] > maxdeg:
            break
        for db, items_b in gb:
            if da + db > maxdeg:
                break
            for ka, ra, ia in items_a:
                for kb, rb, ib in items_b:
                    k = ka + kb
                    r = ra * rb - ia * ib
                    i = ra * ib + ia * rb
                    if k in acc_re:
                        acc_re[k] += r
                        acc_im[k] += i
                    else:
                        acc_re[k] = r
                        acc_im[k] = i
    out = {}
    for k, r in acc_re.items():
        i = acc_im[k]
        if r or i:
            out[k] = _gr(r, i)
    return out


def _add_into(acc: dict, terms: Mapping[int, GaussianRational], factor=None) -> None:
    for k, c in terms.items():
        if factor is not None:
            c = c * factor
        old = acc.get(k)
        if old is None:
            acc[k] = c
        else:
            s = old + c
            if s:
                acc[k] = s
            else:
                del acc[k]


def _scaled(terms: Mapping[int, GaussianRational], factor: GaussianRational) -> dict:
    if not factor:
        return {}
    if factor == ONE:
        return dict(terms)
    return {k: c * factor for k, c in terms.items()}


def _derivative(terms: Mapping[int, GaussianRational], n: int, i: int) -> dict:
    shift = SHIFT * (n - 1 - i)
    step = (1 << shift) + (1 << (SHIFT * n))
    out = {}
    for k, c in terms.items():
        e = (k >> shift) & MASK
        if e:
            out[k - step] = c * e
    return out


def _order_of(terms: Mapping[int, GaussianRational], n: int):
    if not terms:
        return INF
    return _deg(min(terms), n)


def _below(terms: Mapping[int, GaussianRational], n: int, maxdeg) -> dict:
    if maxdeg == INF:
        return dict(terms)
    limit = (maxdeg + 1) << (SHIFT * n)
    return {k: c for k, c in terms.items() if k < limit}


def _fmt_monomial(exps: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"z{i + 1}")
        elif e:
            parts.append(f"z{i + 1}^{e}")
    return "*".join(parts)


def _fmt_terms(items) -> str:
    if not items:
        return "0"
    chunks = []
    for exps, c in items:
        mono = _fmt_monomial(exps)
        coeff = str(c)
        if c.im:
            coeff = f"({coeff})"
        if not mono:
            chunks.append(coeff)
        elif c == ONE:
            chunks.append(mono)
        elif c == -ONE:
            chunks.append("-" + mono)
        else:
            chunks.append(f"{coeff}*{mono}")
    return " + ".join(chunks).replace("+ -", "- ")


# --------------------------------------------------------------------------
# Poly


class Poly:
    """Exact sparse polynomial in ``nvars`` variables over Q(i)."""

    __slots__ = ("nvars", "_terms", "_groups")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise DimensionError("a polynomial needs at least one variable")
        packed: dict[int, GaussianRational] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise DimensionError(f"monomial {tuple(exps)} does not have {nvars} exponents")
            c = _coerce(c)
            if not c:
                continue
            k = _pack(exps)
            if k in packed:
                raise ValueError(f"duplicate monomial {tuple(exps)}")
            packed[k] = c
        self.nvars = nvars
        self._terms = packed
        self._groups = None

    @classmethod
    def _from_packed(cls, nvars: int, packed: dict[int, GaussianRational]) -> "Poly":
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = packed
        obj._groups = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._from_packed(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    def grouped(self):
        if self._groups is None:
            self._groups = _grouped(self._terms, self.nvars)
        return self._groups

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], GaussianRational]:
        n = self.nvars
        return {_unpack(k, n): c for k, c in self._terms.items()}

    def items(self) -> list[tuple[tuple[int, ...], GaussianRational]]:
        """Terms in graded-lexicographic order."""
        n = self.nvars
        return [(_unpack(k, n), self._terms[k]) for k in sorted(self._terms)]

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(_pack(exps), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def order(self):
        return _order_of(self._terms, self.nvars)

    def degree(self):
        if not self._terms:
            return -INF
        return _deg(max(self._terms), self.nvars)

    def is_homogeneous(self) -> bool:
        n = self.nvars
        return len({_deg(k, n) for k in self._terms}) <= 1

    def is_real(self) -> bool:
        return all(not c.im for c in self._terms.values())

    def homogeneous_component(self, d: int) -> "Poly":
        n = self.nvars
        return Poly._from_packed(n, {k: c for k, c in self._terms.items() if _deg(k, n) == d})

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if other.nvars != self.nvars:
            raise DimensionError(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        acc = dict(self._terms)
        _add_into(acc, other._terms)
        return Poly._from_packed(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_packed(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        return Poly._from_packed(self.nvars, _mul_grouped(self.grouped(), other.grouped(), INF))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        return Poly._from_packed(self.nvars, _scaled(self._terms, _coerce(c)))

    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        return Poly._from_packed(self.nvars, _derivative(self._terms, self.nvars, i))

    def truncate(self, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries(self, trunc)

    # dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars}, {_fmt_terms(self.items())})"

    def __str__(self):
        return _fmt_terms(self.items())


# --------------------------------------------------------------------------
# TruncatedSeries


class TruncatedSeries:
    """A power series known modulo terms of total degree > ``trunc``."""

    __slots__ = ("poly", "trunc")

    def __init__(self, poly: Poly, trunc: int):
        if trunc < 0:
            raise TruncationError(f"truncation degree must be non-negative, got {trunc}")
        n = poly.nvars
        if poly._terms and _deg(max(poly._terms), n) > trunc:
            poly = Poly._from_packed(n, _below(poly._terms, n, trunc))
        self.poly = poly
        self.trunc = trunc

    @classmethod
    def _from_packed(cls, nvars: int, trunc: int, packed: dict) -> "TruncatedSeries":
        return cls(Poly._from_packed(nvars, packed), trunc)

    @classmethod
    def from_terms(cls, nvars: int, trunc: int, terms: Mapping[Sequence[int], object]):
        return cls(Poly(nvars, terms), trunc)

    @classmethod
    def zero(cls, nvars: int, trunc: int) -> "TruncatedSeries":
        return cls(Poly.zero(nvars), trunc)

    @classmethod
    def constant(cls, nvars: int, trunc: int, c=1) -> "TruncatedSeries":
        return cls(Poly.constant(nvars, c), trunc)

    @classmethod
    def variable(cls, nvars: int, trunc: int, i: int) -> "TruncatedSeries":
        return cls(Poly.variable(nvars, i), trunc)

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def _terms(self):
        return self.poly._terms

    @property
    def terms(self):
        return self.poly.terms

    def items(self):
        return self.poly.items()

    def coefficient(self, exps):
        if sum(exps) > self.trunc:
            raise TruncationError(f"degree {sum(exps)} is beyond truncation {self.trunc}")
        return self.poly.coefficient(exps)

    def __len__(self):
        return len(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def order(self):
        return self.poly.order()

    def degree(self):
        return self.poly.degree()

    def with_trunc(self, trunc: int) -> "TruncatedSeries":
        """Lower the truncation degree (raising it would invent information)."""
        if trunc > self.trunc:
            raise TruncationError(f"cannot raise truncation from {self.trunc} to {trunc}")
        return TruncatedSeries(self.poly, trunc)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.nvars, self.trunc, other)
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.nvars, self.trunc, other)
        return sub(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncatedSeries(-self.poly, self.trunc)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def diff(self, i: int) -> "TruncatedSeries":
        return partial_derivative(self, i)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.trunc == other.trunc and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.trunc))

    def __repr__(self):
        return f"TruncatedSeries({self.poly} + O(deg {self.trunc + 1}), nvars={self.nvars})"

    def __str__(self):
        return f"{self.poly} + O({self.trunc + 1})"


def _same_nvars(*xs) -> int:
    n = xs[0].nvars
    for x in xs[1:]:
        if x.nvars != n:
            raise DimensionError(f"{n} vs {x.nvars} variables")
    return n


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _same_nvars(a, b)
    d = min(a.trunc, b.trunc)
    acc = _below(a._terms, n, d)
    _add_into(acc, _below(b._terms, n, d))
    return TruncatedSeries._from_packed(n, d, acc)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, -b)


def scale(a: TruncatedSeries, c) -> TruncatedSeries:
    return TruncatedSeries._from_packed(a.nvars, a.trunc, _scaled(a._terms, _coerce(c)))


def _sound_product_trunc(a: TruncatedSeries, b: TruncatedSeries):
    return min(a.trunc + b.order(), b.trunc + a.order())


def mul(a: TruncatedSeries, b: TruncatedSeries, trunc: int | None = None) -> TruncatedSeries:
    """Truncated product.

    By default the result keeps ``min(a.trunc, b.trunc)``.  A larger ``trunc``
    may be requested when operand orders justify it; asking for more than
    ``min(a.trunc + o(b), b.trunc + o(a))`` raises :class:`TruncationError`.
    """
    n = _same_nvars(a, b)
    if trunc is None:
        trunc = min(a.trunc, b.trunc)
    elif trunc > min(a.trunc, b.trunc) and trunc > _sound_product_trunc(a, b):
        raise TruncationError(
            f"product is only known to degree {_sound_product_trunc(a, b)}, asked for {trunc}"
        )
    return TruncatedSeries._from_packed(n, trunc, _mul_grouped(a.poly.grouped(), b.poly.grouped(), trunc))


def partial_derivative(a: TruncatedSeries, i: int) -> TruncatedSeries:
    """d a / d z_i (0-based ``i``); the result is known one degree less."""
    n = a.nvars
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for {n} variables")
    if a.trunc == 0:
        raise TruncationError("derivative of a series truncated at degree 0 carries no information")
    return TruncatedSeries._from_packed(n, a.trunc - 1, _derivative(a._terms, n, i))


def gradient(a: TruncatedSeries) -> "FormalMap":
    return FormalMap([partial_derivative(a, i) for i in range(a.nvars)])


def inner_product(a: "FormalMap", b: "FormalMap", trunc: int | None = None) -> TruncatedSeries:
    """Bilinear (not Hermitian) form: sum of ``a_i * b_i``."""
    if len(a) != len(b):
        raise DimensionError(f"inner product of maps with {len(a)} and {len(b)} components")
    _same_nvars(a, b)
    if trunc is None:
        trunc = min(a.trunc, b.trunc)
    n = a.nvars
    acc: dict = {}
    for x, y in zip(a, b):
        _add_into(acc, mul(x, y, trunc)._terms)
    return TruncatedSeries._from_packed(n, trunc, acc)


def order(a):
    """Minimal total degree of a stored term; ``math.inf`` for zero.

    Accepts a series, a polynomial or a formal map (minimum over components).
    """
    if isinstance(a, FormalMap):
        return a.order()
    return a.order()


def homogeneous_component(a: TruncatedSeries, d: int) -> Poly:
    if d > a.trunc:
        raise TruncationError(f"degree {d} component is unknown beyond truncation {a.trunc}")
    return a.poly.homogeneous_component(d)


def equal_mod(a: TruncatedSeries, b: TruncatedSeries, degree: int | None = None) -> bool:
    """True when ``a`` and ``b`` agree in every degree ``<= degree``.

    ``degree`` defaults to the smaller truncation and may not exceed it.
    """
    n = _same_nvars(a, b)
    top = min(a.trunc, b.trunc)
    if degree is None:
        degree = top
    elif degree > top:
        raise TruncationError(f"cannot compare beyond degree {top}")
    return _below(a._terms, n, degree) == _below(b._terms, n, degree)


def laplacian(a: TruncatedSeries) -> TruncatedSeries:
    parts = [partial_derivative(partial_derivative(a, i), i) for i in range(a.nvars)]
    out = parts[0]
    for p in parts[1:]:
        out = add(out, p)
    return out


# --------------------------------------------------------------------------
# composition


def compose(a: TruncatedSeries, G: "FormalMap") -> TruncatedSeries:
    """``a(G_1, ..., G_n)`` modulo degree > ``min(a.trunc, G.trunc)``.

    Every ``G_i`` must be free of constant terms.  Evaluation is a nested
    Horner scheme over the variables; inner levels only carry the precision
    that can still reach the final truncation degree.
    """
    n = _same_nvars(a, G)
    if len(G) != n:
        raise DimensionError(f"substituting {len(G)} series into a function of {n} variables")
    orders = []
    for i, g in enumerate(G):
        o = g.order()
        if o < 1:
            raise PreconditionError(f"component {i} of the substituted map has a constant term")
        orders.append(o)
    top = min(a.trunc, G.trunc)
    groups = [g.poly.grouped() for g in G]
    items = [(_unpack(k, n), c) for k, c in _below(a._terms, n, top).items()]
    packed = _horner(items, 0, top, n, orders, groups)
    return TruncatedSeries._from_packed(n, top, packed)


def _horner(items, v: int, prec: int, n: int, orders, groups) -> dict:
    if prec < 0 or not items:
        return {}
    if v == n:
        total = ZERO
        for _, c in items:
            total = total + c
        return {0: total} if total else {}
    by_power: dict[int, list] = {}
    for exps, c in items:
        by_power.setdefault(exps[v], []).append((exps, c))
    o = orders[v]
    if o == INF:
        return _horner(by_power.get(0, []), v + 1, prec, n, orders, groups)
    top = min(max(by_power), prec // o)
    acc: dict = {}
    for k in range(top, -1, -1):
        q = prec - k * o
        if acc:
            acc = _mul_grouped(groups[v], _grouped(acc, n), q)
        if k in by_power:
            _add_into(acc, _horner(by_power[k], v + 1, q, n, orders, groups))
    return acc


# --------------------------------------------------------------------------
# FormalMap


class FormalMap:
    """An n-tuple of truncated series in n variables, sharing one truncation."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[TruncatedSeries]):
        comps = list(components)
        if not comps:
            raise DimensionError("a formal map needs at least one component")
        n = _same_nvars(*comps)
        if len(comps) != n:
            raise DimensionError(f"{len(comps)} components for {n} variables")
        d = min(c.trunc for c in comps)
        self.components = tuple(c if c.trunc == d else c.with_trunc(d) for c in comps)

    @classmethod
    def identity(cls, nvars: int, trunc: int) -> "FormalMap":
        return cls(TruncatedSeries.variable(nvars, trunc, i) for i in range(nvars))

    @classmethod
    def zero(cls, nvars: int, trunc: int) -> "FormalMap":
        return cls(TruncatedSeries.zero(nvars, trunc) for _ in range(nvars))

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], trunc: int) -> "FormalMap":
        return cls(TruncatedSeries(p, trunc) for p in polys)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def trunc(self) -> int:
        return self.components[0].trunc

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def order(self):
        return min(c.order() for c in self.components)

    def degree(self):
        return max(c.degree() for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def with_trunc(self, trunc: int) -> "FormalMap":
        return FormalMap(c.with_trunc(trunc) for c in self.components)

    def __add__(self, other: "FormalMap") -> "FormalMap":
        if len(other) != len(self):
            raise DimensionError("maps of different length")
        return FormalMap(add(x, y) for x, y in zip(self, other))

    def __sub__(self, other: "FormalMap") -> "FormalMap":
        if len(other) != len(self):
            raise DimensionError("maps of different length")
        return FormalMap(sub(x, y) for x, y in zip(self, other))

    def __neg__(self) -> "FormalMap":
        return FormalMap(-c for c in self.components)

    def scale(self, c) -> "FormalMap":
        return FormalMap(scale(x, c) for x in self.components)

    def __rmul__(self, c):
        return self.scale(c)

    def compose(self, G: "FormalMap") -> "FormalMap":
        """The map ``z -> self(G(z))``."""
        return FormalMap(compose(c, G) for c in self.components)

    def __eq__(self, other):
        if isinstance(other, FormalMap):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        inner = ", ".join(str(c.poly) for c in self.components)
        return f"FormalMap(({inner}) + O({self.trunc + 1}))"


# --------------------------------------------------------------------------
# Jacobian / Hessian and small matrix helpers
#
# Matrices are tuples of row tuples of TruncatedSeries.

Matrix = tuple


def jacobian(F: FormalMap) -> Matrix:
    """``J[i][j] = dF_i / dz_j``."""
    n = F.nvars
    return tuple(tuple(partial_derivative(f, j) for j in range(n)) for f in F)


def hessian(P: TruncatedSeries) -> Matrix:
    n = P.nvars
    first = [partial_derivative(P, i) for i in range(n)]
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = partial_derivative(first[i], j)
    return tuple(tuple(r) for r in rows)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def trace(A: Matrix) -> TruncatedSeries:
    out = A[0][0]
    for i in range(1, len(A)):
        out = add(out, A[i][i])
    return out


def mat_mul(A: Matrix, B: Matrix, trunc: int | None = None) -> Matrix:
    n, m, p = len(A), len(B), len(B[0])
    if len(A[0]) != m:
        raise DimensionError("matrix shapes do not match")
    rows = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                term = mul(A[i][k], B[k][j], trunc)
                acc = term if acc is None else add(acc, term)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(A: Matrix, v: FormalMap, trunc: int | None = None) -> FormalMap:
    if len(A[0]) != len(v):
        raise DimensionError("matrix and vector shapes do not match")
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            term = mul(a, x, trunc)
            acc = term if acc is None else add(acc, term)
        out.append(acc)
    return FormalMap(out)


def mat_power(A: Matrix, k: int) -> Matrix:
    if k < 1:
        raise ValueError("matrix power must be at least 1")
    out = A
    for _ in range(k - 1):
        out = mat_mul(out, A)
    return out


def is_zero_matrix(A: Matrix) -> bool:
    return all(x.is_zero() for row in A for x in row)


def is_symmetric(A: Matrix) -> bool:
    n = len(A)
    return all(equal_mod(A[i][j], A[j][i]) for i in range(n) for j in range(i + 1, n))
