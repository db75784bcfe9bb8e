"""Finite rings as Cayley tables over dense indices, plus idempotents and
Pierce decompositions.

Every ring here is associative with a two-sided identity ``one != zero``.
Elements are the integers ``0..n-1``; ``element_labels`` gives each a
human-readable name (``"3"``, ``"(1,0)"``, ``"[[1,1],[0,0]]"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Sequence

import numpy as np

from .errors import (
    InvalidOrderError,
    NotIdempotentError,
    RingAxiomError,
    RingTooLargeError,
    UnknownElementError,
)
from .subsets import SubsetMask

MAX_ORDER = 4096
# Constructors other than build_from_tables re-verify the axioms only up to
# this order; above it the tables are correct by construction from a
# verified base and an O(n^3) sweep is no longer desk-scale.
VALIDATE_LIMIT = 256

_TABLE_DTYPE = np.int16


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def check_ring_axioms(add: np.ndarray, mul: np.ndarray, zero: int, one: int) -> None:
    """Exhaustively verify the ring axioms, raising on the first violation.

    Checks run in a fixed order so the reported witness is deterministic:
    additive identity, commutativity, associativity, inverses, then the
    multiplicative identity, associativity and both distributive laws.
    Triples are scanned in lexicographic index order.
    """
    n = add.shape[0]
    idx = np.arange(n)
    if zero == one:
        raise RingAxiomError("zero-equals-one", (zero,), "the identity ring is excluded")

    w = _first_mismatch(add[zero], idx)
    if w is not None:
        raise RingAxiomError("additive-identity", w)
    w = _first_mismatch(add[:, zero], idx)
    if w is not None:
        raise RingAxiomError("additive-identity", w)
    w = _first_mismatch(add, add.T)
    if w is not None:
        raise RingAxiomError("additive-commutativity", w)
    for x in range(n):
        row = add[x]
        w = _first_mismatch(add[row], row[add])
        if w is not None:
            raise RingAxiomError("additive-associativity", (x, *w))
    has_inverse = (add == zero).any(axis=1)
    if not has_inverse.all():
        x = int(np.argmin(has_inverse))
        raise RingAxiomError("group-inverse", (x,), f"no y with {x}+y=zero")

    w = _first_mismatch(mul[one], idx)
    if w is not None:
        raise RingAxiomError("identity", w, "one*x != x")
    w = _first_mismatch(mul[:, one], idx)
    if w is not None:
        raise RingAxiomError("identity", w, "x*one != x")
    for x in range(n):
        row = mul[x]
        w = _first_mismatch(mul[row], row[mul])
        if w is not None:
            raise RingAxiomError("associativity", (x, *w))
    for x in range(n):
        row = mul[x]
        w = _first_mismatch(row[add], add[row[:, None], row[None, :]])
        if w is not None:
            raise RingAxiomError("left-distributivity", (x, *w))
        col = mul[:, x]
        w = _first_mismatch(col[add], add[col[:, None], col[None, :]])
        if w is not None:
            raise RingAxiomError("right-distributivity", (x, *w))


class FiniteRing:
    """An immutable finite ring given by full addition and multiplication tables.

    Args:
        add, mul: ``n x n`` tables of element indices.
        zero, one: indices of the additive and multiplicative identities.
        labels: display name per element; defaults to ``str(i)``.
        spec: JSON-able description that rebuilds this ring (see ``specs``).
        validate: run the exhaustive axiom check.
    """

    def __init__(
        self,
        add: Any,
        mul: Any,
        zero: int,
        one: int,
        labels: Sequence[str] | None = None,
        spec: dict | None = None,
        *,
        validate: bool = True,
    ):
        add_arr = np.asarray(add, dtype=np.int64)
        mul_arr = np.asarray(mul, dtype=np.int64)
        if add_arr.ndim != 2 or add_arr.shape[0] != add_arr.shape[1]:
            raise RingAxiomError("shape", (), f"add table has shape {add_arr.shape}")
        n = add_arr.shape[0]
        if mul_arr.shape != (n, n):
            raise RingAxiomError("shape", (), f"mul table has shape {mul_arr.shape}, expected {(n, n)}")
        if n < 2:
            raise InvalidOrderError(f"ring order must be at least 2, got {n}")
        if n > MAX_ORDER:
            raise RingTooLargeError(n, MAX_ORDER)
        for name, arr in (("add", add_arr), ("mul", mul_arr)):
            bad = np.argwhere((arr < 0) | (arr >= n))
            if len(bad):
                i, j = (int(v) for v in bad[0])
                raise RingAxiomError("range", (i, j), f"{name}[{i}][{j}] = {arr[i, j]} not in [0, {n})")
        if not (0 <= zero < n and 0 <= one < n):
            raise RingAxiomError("range", (zero, one), "zero/one outside the element range")

        self.order = n
        self.zero = int(zero)
        self.one = int(one)
        self.add_table = add_arr.astype(_TABLE_DTYPE)
        self.mul_table = mul_arr.astype(_TABLE_DTYPE)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        if validate:
            check_ring_axioms(self.add_table, self.mul_table, self.zero, self.one)

        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValueError("element labels must be unique")
        self.element_labels = labels
        self._label_index = {s: i for i, s in enumerate(labels)}
        self.spec = spec

    def __repr__(self) -> str:
        from .specs import describe_spec

        return f"FiniteRing({describe_spec(self.spec) if self.spec else 'order=%d' % self.order})"

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    @cached_property
    def _negation(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.argmax(self.add_table == self.zero, axis=1))

    def neg(self, x: int) -> int:
        return self._negation[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def complement_idempotent(self, e: int) -> int:
        """``1 - e``, computed as ``one + (-e)``."""
        return self.add(self.one, self.neg(e))

    def power(self, x: int, k: int) -> int:
        acc = self.one
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())

    def is_idempotent(self, e: int) -> bool:
        return self.mul(e, e) == e

    def label(self, x: int) -> str:
        return self.element_labels[x]

    def element(self, literal: str | int) -> int:
        """Resolve a label (``"[[1,1],[0,0]]"``) or an index (``"5"``)."""
        if isinstance(literal, (int, np.integer)):
            x = int(literal)
        else:
            key = "".join(str(literal).split())
            if key in self._label_index:
                return self._label_index[key]
            try:
                x = int(key)
            except ValueError:
                raise UnknownElementError(f"no element labelled {literal!r}") from None
        if not 0 <= x < self.order:
            raise UnknownElementError(f"element index {x} outside [0, {self.order})")
        return x

    def labels_of(self, s: SubsetMask) -> list[str]:
        return [self.element_labels[x] for x in s]

    def format_set(self, s: SubsetMask) -> str:
        return "{" + ", ".join(self.labels_of(s)) + "}"


def _check_size(order: int) -> None:
    if order > MAX_ORDER:
        raise RingTooLargeError(order, MAX_ORDER)


def build_zn(n: int) -> FiniteRing:
    """The integers modulo ``n``."""
    if n < 2:
        raise InvalidOrderError(f"Z_n needs n >= 2, got {n}")
    _check_size(n)
    i = np.arange(n, dtype=np.int64)
    add = np.add.outer(i, i) % n
    mul = np.multiply.outer(i, i) % n
    return FiniteRing(add, mul, 0, 1, spec={"kind": "zn", "n": n}, validate=n <= VALIDATE_LIMIT)


def _decode(n: int, b: int, width: int) -> np.ndarray:
    """Row-major base-``b`` digits of ``0..n-1``, most significant first."""
    idx = np.arange(n, dtype=np.int64)
    digits = np.empty((n, width), dtype=np.int64)
    for pos in range(width):
        digits[:, pos] = (idx // b ** (width - 1 - pos)) % b
    return digits


def _encode(digits: np.ndarray, b: int) -> np.ndarray:
    width = digits.shape[-1]
    out = np.zeros(digits.shape[:-1], dtype=np.int64)
    for pos in range(width):
        out = out * b + digits[..., pos]
    return out


def _matrix_label(base: FiniteRing, rows: Sequence[Sequence[int]]) -> str:
    return "[" + ",".join("[" + ",".join(base.label(v) for v in row) + "]" for row in rows) + "]"


def build_matrix_ring(base: FiniteRing, k: int) -> FiniteRing:
    """Full ``k x k`` matrix ring over ``base``; entries encoded row-major."""
    if k < 1:
        raise InvalidOrderError(f"matrix dimension must be positive, got {k}")
    b = base.order
    width = k * k
    if b**width > MAX_ORDER:
        raise RingTooLargeError(b**width, MAX_ORDER)
    n = b**width
    badd = base.add_table.astype(np.int64)
    bmul = base.mul_table.astype(np.int64)
    ent = _decode(n, b, width).reshape(n, k, k)

    add = _encode(badd[ent.reshape(n, 1, width), ent.reshape(1, n, width)], b)

    mul = np.empty((n, n), dtype=np.int64)
    chunk = max(1, (1 << 20) // n)
    for start in range(0, n, chunk):
        left = ent[start:start + chunk]
        m = left.shape[0]
        prod = np.empty((m, n, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                acc = np.full((m, n), base.zero, dtype=np.int64)
                for l in range(k):
                    acc = badd[acc, bmul[left[:, None, i, l], ent[None, :, l, j]]]
                prod[:, :, i, j] = acc
        mul[start:start + m] = _encode(prod.reshape(m, n, width), b)

    ident = np.full((k, k), base.zero, dtype=np.int64)
    np.fill_diagonal(ident, base.one)
    zeros = np.full((1, width), base.zero, dtype=np.int64)
    labels = [_matrix_label(base, ent[x]) for x in range(n)]
    return FiniteRing(
        add,
        mul,
        int(_encode(zeros, b)[0]),
        int(_encode(ident.reshape(1, width), b)[0]),
        labels,
        spec={"kind": "matrix", "base": base.spec, "k": k},
        validate=n <= VALIDATE_LIMIT,
    )


def build_upper_triangular(base: FiniteRing) -> FiniteRing:
    """Upper-triangular ``2 x 2`` matrices ``[[p, q], [0, r]]`` over ``base``.

    Built directly (not filtered out of the full matrix ring) so the element
    count is ``|base|^3``.
    """
    b = base.order
    n = b**3
    _check_size(n)
    badd = base.add_table.astype(np.int64)
    bmul = base.mul_table.astype(np.int64)
    d = _decode(n, b, 3)
    p, q, r = d[:, 0], d[:, 1], d[:, 2]

    add = _encode(badd[d[:, None, :], d[None, :, :]], b)
    prod = np.stack(
        [
            bmul[p[:, None], p[None, :]],
            badd[bmul[p[:, None], q[None, :]], bmul[q[:, None], r[None, :]]],
            bmul[r[:, None], r[None, :]],
        ],
        axis=-1,
    )
    mul = _encode(prod, b)
    z = base.zero
    zero_idx, one_idx = (int(v) for v in _encode(np.array([[z, z, z], [base.one, z, base.one]]), b))
    labels = [_matrix_label(base, [[p[x], q[x]], [z, r[x]]]) for x in range(n)]
    return FiniteRing(
        add,
        mul,
        zero_idx,
        one_idx,
        labels,
        spec={"kind": "upper_triangular", "base": base.spec},
        validate=n <= VALIDATE_LIMIT,
    )


def build_product(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """Direct product with componentwise operations; ``(x, y)`` has index ``x*|r2| + y``."""
    n1, n2 = r1.order, r2.order
    n = n1 * n2
    _check_size(n)
    idx = np.arange(n, dtype=np.int64)
    i, j = idx // n2, idx % n2

    def combine(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        t1 = t1.astype(np.int64)
        t2 = t2.astype(np.int64)
        return t1[i[:, None], i[None, :]] * n2 + t2[j[:, None], j[None, :]]

    labels = [f"({r1.label(a)},{r2.label(b)})" for a in range(n1) for b in range(n2)]
    return FiniteRing(
        combine(r1.add_table, r2.add_table),
        combine(r1.mul_table, r2.mul_table),
        r1.zero * n2 + r2.zero,
        r1.one * n2 + r2.one,
        labels,
        spec={"kind": "product", "factors": [r1.spec, r2.spec]},
        validate=n <= VALIDATE_LIMIT,
    )


def build_from_tables(
    add: Sequence[Sequence[int]],
    mul: Sequence[Sequence[int]],
    zero: int,
    one: int,
    labels: Sequence[str] | None = None,
) -> FiniteRing:
    """Validate user-supplied tables; always runs the full axiom sweep."""
    spec: dict[str, Any] = {
        "kind": "tables",
        "add": [list(map(int, row)) for row in add],
        "mul": [list(map(int, row)) for row in mul],
        "zero": int(zero),
        "one": int(one),
    }
    if labels is not None:
        spec["labels"] = list(labels)
    return FiniteRing(add, mul, zero, one, labels, spec=spec, validate=True)


@dataclass(frozen=True)
class IdempotentSet:
    ring: FiniteRing
    elements: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(e for e in self.elements if e not in (self.ring.zero, self.ring.one))


def idempotents(r: FiniteRing) -> IdempotentSet:
    diag = r.mul_table[np.arange(r.order), np.arange(r.order)]
    found = np.nonzero(diag == np.arange(r.order))[0]
    return IdempotentSet(r, tuple(int(e) for e in found))


def left_set(r: FiniteRing, a: int) -> SubsetMask:
    """``Ra = {x*a}``, the principal left ideal generated by ``a``."""
    return SubsetMask.of(r.order, (int(v) for v in np.unique(r.mul_table[:, a])))


def right_set(r: FiniteRing, a: int) -> SubsetMask:
    """``aR = {a*x}``."""
    return SubsetMask.of(r.order, (int(v) for v in np.unique(r.mul_table[a, :])))


@dataclass(frozen=True)
class PierceSplit:
    """``R = Re (+) R(1-e)`` for ``side="right"``; ``eR (+) (1-e)R`` for ``"left"``."""

    e: int
    complement: int
    side: str
    left_part: SubsetMask
    complement_part: SubsetMask
    direct_sum: bool


def pierce_decompose(r: FiniteRing, e: int, side: str = "right") -> PierceSplit:
    if not r.is_idempotent(e):
        raise NotIdempotentError(f"{r.label(e)} is not idempotent: e*e = {r.label(r.mul(e, e))}")
    f = r.complement_idempotent(e)
    if side == "right":
        part_e, part_f = r.mul_table[:, e], r.mul_table[:, f]
        both, other = left_set(r, e), left_set(r, f)
    elif side == "left":
        part_e, part_f = r.mul_table[e, :], r.mul_table[f, :]
        both, other = right_set(r, e), right_set(r, f)
    else:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    # x = xe + x(1-e) for every x, and the pair (xe, x(1-e)) determines x.
    recombines = bool((r.add_table[part_e, part_f] == np.arange(r.order)).all())
    trivial_meet = (both & other) == SubsetMask.singleton(r.order, r.zero)
    unique = len(both) * len(other) == r.order
    return PierceSplit(e, f, side, both, other, recombines and trivial_meet and unique)
