"""Binary rooted trees and the tree expansion of ``Q_[m]``.

Trees are kept in canonical form: a leaf encodes as ``o`` and an inner vertex
as ``(AB)`` where ``A <= B`` are the child encodings in string order.  Two trees
are isomorphic (root-preserving) exactly when their encodings are equal.

For a potential ``P`` each tree carries a series: ``Q_o = P`` and
``Q_(AB) = <grad Q_A, grad Q_B>``.  Summing ``Q_T / beta(T)`` over trees with
``m`` leaves reproduces ``Q_[m]`` from :mod:`forminv.symmetric`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from gmpy2 import mpq

from .coefficients import GaussianRational
from .errors import TruncationError
from .series import TruncatedSeries, _add_into, gradient, inner_product
from .symmetric import _check_potential

__all__ = [
    "TreeStructureError",
    "BinaryTree",
    "GeneralTree",
    "LEAF",
    "canonicalize",
    "parse_tree",
    "enumerate_trees",
    "automorphism_count",
    "tree_factorial",
    "prune_leaves",
    "chain",
    "beta",
    "beta_recursive",
    "QTreeCache",
    "q_of_tree",
    "tree_expansion_Q",
]


class TreeStructureError(ValueError):
    """Input is not a well-formed (binary) rooted tree."""


class BinaryTree:
    """Canonical binary rooted tree; instances are interned by encoding."""

    __slots__ = ("left", "right", "encoding", "leaves", "vertices")

    _interned: dict[str, "BinaryTree"] = {}

    def __new__(cls, left: "BinaryTree | None" = None, right: "BinaryTree | None" = None):
        if (left is None) != (right is None):
            raise TreeStructureError("an inner vertex needs exactly two children")
        if left is None:
            enc = "o"
        else:
            if left.encoding > right.encoding:
                left, right = right, left
            enc = f"({left.encoding}{right.encoding})"
        cached = cls._interned.get(enc)
        if cached is not None:
            return cached
        obj = super().__new__(cls)
        obj.left, obj.right, obj.encoding = left, right, enc
        if left is None:
            obj.leaves, obj.vertices = 1, 1
        else:
            obj.leaves = left.leaves + right.leaves
            obj.vertices = left.vertices + right.vertices + 1
        cls._interned[enc] = obj
        return obj

    @classmethod
    def node(cls, a: "BinaryTree", b: "BinaryTree") -> "BinaryTree":
        return cls(a, b)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def children(self) -> tuple["BinaryTree", ...]:
        return () if self.left is None else (self.left, self.right)

    def __eq__(self, other):
        if isinstance(other, BinaryTree):
            return self.encoding == other.encoding
        return NotImplemented

    def __hash__(self):
        return hash(self.encoding)

    def __reduce__(self):
        return (parse_tree, (self.encoding,))

    def __repr__(self):
        return f"BinaryTree({self.encoding!r})"

    def __str__(self):
        return self.encoding

    def __lt__(self, other: "BinaryTree"):
        return self.encoding < other.encoding


LEAF = BinaryTree()


def canonicalize(raw) -> BinaryTree:
    """Canonical form of an ordered binary tree given as nested pairs.

    A leaf is ``()`` (or ``"o"`` or ``None``); an inner vertex is a 2-tuple or
    2-list of subtrees.  A ``BinaryTree`` is returned unchanged.
    """
    if isinstance(raw, BinaryTree):
        return raw
    if raw is None or raw == () or raw == "o":
        return LEAF
    if isinstance(raw, (tuple, list)):
        if len(raw) != 2:
            raise TreeStructureError(f"vertex with {len(raw)} children in a binary tree")
        return BinaryTree(canonicalize(raw[0]), canonicalize(raw[1]))
    raise TreeStructureError(f"cannot read {raw!r} as a tree")


def parse_tree(text: str) -> BinaryTree:
    """Inverse of ``str(tree)``; any child order is accepted."""

    def read(i: int) -> tuple[BinaryTree, int]:
        if i >= len(text):
            raise TreeStructureError(f"unexpected end of {text!r}")
        if text[i] == "o":
            return LEAF, i + 1
        if text[i] != "(":
            raise TreeStructureError(f"unexpected {text[i]!r} in {text!r}")
        a, i = read(i + 1)
        b, i = read(i)
        if i >= len(text) or text[i] != ")":
            raise TreeStructureError(f"expected ')' in {text!r}")
        return BinaryTree(a, b), i + 1

    tree, end = read(0)
    if end != len(text):
        raise TreeStructureError(f"trailing characters in {text!r}")
    return tree


@lru_cache(maxsize=None)
def _enumerate(m: int) -> tuple[BinaryTree, ...]:
    if m == 1:
        return (LEAF,)
    found = set()
    for i in range(1, m // 2 + 1):
        for a in _enumerate(i):
            for b in _enumerate(m - i):
                if i == m - i and b.encoding < a.encoding:
                    continue
                found.add(BinaryTree(a, b))
    return tuple(sorted(found))


def enumerate_trees(m: int) -> list[BinaryTree]:
    """All isomorphism classes of binary rooted trees with ``m`` leaves, sorted by encoding."""
    if m < 1:
        raise ValueError("a binary tree has at least one leaf")
    return list(_enumerate(m))


@lru_cache(maxsize=None)
def automorphism_count(T: BinaryTree) -> int:
    if T.is_leaf:
        return 1
    a = automorphism_count(T.left) * automorphism_count(T.right)
    return 2 * a if T.left == T.right else a


class GeneralTree:
    """Rooted tree with any number of children, in canonical (sorted) form.

    Encodings are ``[...]`` with the sorted child encodings inside; the
    singleton is ``[]``.  The empty tree is represented by ``None`` wherever
    a ``GeneralTree`` may be absent.
    """

    __slots__ = ("children", "encoding", "size")

    def __init__(self, children: Iterable["GeneralTree"] = ()):
        kids = sorted(children, key=lambda c: c.encoding)
        self.children = tuple(kids)
        self.encoding = "[" + "".join(c.encoding for c in kids) + "]"
        self.size = 1 + sum(c.size for c in kids)

    def __eq__(self, other):
        if isinstance(other, GeneralTree):
            return self.encoding == other.encoding
        return NotImplemented

    def __hash__(self):
        return hash(self.encoding)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GeneralTree({self.encoding!r})"

    def __str__(self):
        return self.encoding


def chain(m: int) -> GeneralTree | None:
    """The chain ``C_m``: ``m`` vertices, height ``m - 1`` (``None`` for m = 0)."""
    if m < 0:
        raise ValueError("chain length must be non-negative")
    tree = None
    for _ in range(m):
        tree = GeneralTree(() if tree is None else (tree,))
    return tree


def tree_factorial(T: BinaryTree | GeneralTree | None) -> int:
    """``T! = |T| * T_1! * ... * T_d!`` with ``empty! = o! = 1``."""
    if T is None:
        return 1
    if isinstance(T, BinaryTree):
        if T.is_leaf:
            return 1
        return T.vertices * tree_factorial(T.left) * tree_factorial(T.right)
    out = T.size
    for c in T.children:
        out *= tree_factorial(c)
    return out


def prune_leaves(T: BinaryTree) -> GeneralTree | None:
    """Delete every leaf; the single-vertex tree prunes to ``None`` (empty)."""
    if T.is_leaf:
        return None
    kids = [prune_leaves(c) for c in T.children]
    return GeneralTree(k for k in kids if k is not None)


def beta(T: BinaryTree) -> int:
    """``alpha(T) * (pruned T)!``."""
    if not isinstance(T, BinaryTree):
        raise TreeStructureError("beta is defined for non-empty binary trees")
    return automorphism_count(T) * tree_factorial(prune_leaves(T))


@lru_cache(maxsize=None)
def beta_recursive(T: BinaryTree) -> int:
    """``beta`` via ``beta(B+(A, B)) = c (l(T) - 1) beta(A) beta(B)``, c = 2 iff A ~ B."""
    if T.is_leaf:
        return 1
    b = (T.leaves - 1) * beta_recursive(T.left) * beta_recursive(T.right)
    return 2 * b if T.left == T.right else b


class QTreeCache:
    """Memo of ``Q_T`` for one potential ``P``, keyed by canonical encoding."""

    def __init__(self, P: TruncatedSeries):
        _check_potential(P)
        self.P = P
        self._q: dict[str, TruncatedSeries] = {}
        self._grad: dict[str, object] = {}

    def q(self, T: BinaryTree) -> TruncatedSeries:
        hit = self._q.get(T.encoding)
        if hit is not None:
            return hit
        if T.is_leaf:
            out = self.P
        else:
            D = self.P.trunc
            if D < 1:
                raise TruncationError("truncation too low to take gradients")
            # gradients have order >= 1, so the pairing stays exact through D
            out = inner_product(self._gradient(T.left), self._gradient(T.right), D)
        self._q[T.encoding] = out
        return out

    def _gradient(self, T: BinaryTree):
        hit = self._grad.get(T.encoding)
        if hit is None:
            hit = self._grad[T.encoding] = gradient(self.q(T))
        return hit


def q_of_tree(T: BinaryTree, P: TruncatedSeries, cache: QTreeCache | None = None) -> TruncatedSeries:
    if cache is None:
        cache = QTreeCache(P)
    elif cache.P is not P and cache.P != P:
        raise ValueError("cache belongs to a different potential")
    return cache.q(T)


def tree_expansion_Q(P: TruncatedSeries, m: int, cache: QTreeCache | None = None) -> TruncatedSeries:
    """``sum_{l(T) = m} Q_T / beta(T)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if cache is None:
        cache = QTreeCache(P)
    acc: dict = {}
    for T in enumerate_trees(m):
        _add_into(acc, cache.q(T)._terms, GaussianRational._raw(mpq(1, beta(T))))
    return TruncatedSeries._from_packed(P.nvars, P.trunc, acc)
