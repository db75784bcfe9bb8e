"""Separation properties of ``(R, tau_a)``, each decided twice.

The *definitional* side tests the property as topology defines it, using
the engine's minimal neighbourhoods. The *characterization* side tests the
orbit condition quoted for that property, with powers of ``a`` starting at
1. Both are recorded; any disagreement is reported with a witness instead
of being reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidCoverError, OracleTooLargeError
from .oracle import ORACLE_MAX_ORDER, ExplicitTopology, enumerate_topology
from .subsets import SubsetMask
from .topology import TopologySpace

SATURATION_READING = "O_h(F) read as the saturation O(F), the union of orbits of F"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds_definitional: bool
    holds_characterization: bool
    witness: tuple | None = None
    interpretation: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.holds_definitional == self.holds_characterization


def strict_orbit(t: TopologySpace, x: int) -> SubsetMask:
    """``{x a^k : k >= 1}``; ``k`` need not exceed the orbit length."""
    bits = 0
    y = x
    for _ in range(len(t.orbit(x).sequence)):
        y = t.successor[y]
        bits |= 1 << y
    return SubsetMask(t.n, bits)


def _strict_orbits(t: TopologySpace) -> list[SubsetMask]:
    return [strict_orbit(t, x) for x in range(t.n)]


def _pairs(n: int):
    for x in range(n):
        for y in range(x + 1, n):
            yield x, y


def _verdict(name, def_w, char_w, **kw) -> AxiomVerdict:
    return AxiomVerdict(
        name,
        def_w is None,
        char_w is None,
        witness=def_w if def_w is not None else char_w,
        details={"definitional_witness": def_w, "characterization_witness": char_w},
        **kw,
    )


def t0(t: TopologySpace) -> AxiomVerdict:
    """Kolmogorov: distinct points never share all neighbourhoods."""
    orbits = [t.orbit(x).members for x in range(t.n)]
    strict = _strict_orbits(t)
    def_w = next(((x, y) for x, y in _pairs(t.n) if x in orbits[y] and y in orbits[x]), None)
    char_w = next(((x, y) for x, y in _pairs(t.n) if x in strict[y] and y in strict[x]), None)
    return _verdict("T0", def_w, char_w)


def t1(t: TopologySpace) -> AxiomVerdict:
    """Every singleton closed, versus no point being a proper power-image of another."""
    def_w = None
    for x in range(t.n):
        cl = t.closure(SubsetMask.singleton(t.n, x))
        if len(cl) > 1:
            y = next(v for v in cl if v != x)
            def_w = (min(x, y), max(x, y))
            break
    strict = _strict_orbits(t)
    char_w = next(((x, y) for x, y in _pairs(t.n) if x in strict[y] or y in strict[x]), None)
    return _verdict("T1", def_w, char_w)


def t2(t: TopologySpace) -> AxiomVerdict:
    orbits = [t.orbit(x).members for x in range(t.n)]
    strict = _strict_orbits(t)
    def_w = next(((x, y) for x, y in _pairs(t.n) if not orbits[x].isdisjoint(orbits[y])), None)
    char_w = next(((x, y) for x, y in _pairs(t.n) if not strict[x].isdisjoint(strict[y])), None)
    return _verdict("T2", def_w, char_w)


def _saturate_all(t: TopologySpace, masks: np.ndarray) -> np.ndarray:
    sat = masks.copy()
    for _ in range(t.n):
        step = np.zeros_like(sat)
        for x in range(t.n):
            step |= ((sat >> np.int64(x)) & 1) << np.int64(t.successor[x])
        grown = sat | step
        if np.array_equal(grown, sat):
            break
        sat = grown
    return sat


def regular(t: TopologySpace, oracle: ExplicitTopology | None = None) -> AxiomVerdict:
    """Regularity as defined for these spaces, against its orbit characterization.

    Definitional: for each ``x`` and closed ``F`` missing ``x`` with
    ``F != complement(O(x))``, the saturation of ``F`` misses ``O(x)``.
    Characterization: for each ``x`` and each open ``U`` with
    ``x in U`` and ``U`` inside ``O(x)``, ``O(x) <= closure(O(x)) <= U``.
    Closed sets come from the explicit enumeration, so order is capped.
    """
    if t.n > ORACLE_MAX_ORDER:
        raise OracleTooLargeError(t.n, ORACLE_MAX_ORDER)
    oracle = oracle or enumerate_topology(t)
    full = (1 << t.n) - 1
    closed = oracle.closed_masks
    sat = _saturate_all(t, closed)

    def_w = None
    for x in range(t.n):
        ob = t.orbit_bits(x)
        eligible = (((closed >> np.int64(x)) & 1) == 0) & (closed != (full ^ ob))
        bad = eligible & ((sat & np.int64(ob)) != 0)
        if bad.any():
            def_w = (x, SubsetMask(t.n, int(closed[np.argmax(bad)])).to_list())
            break

    char_w = None
    for x in range(t.n):
        ob = t.orbit(x).members
        cl = t.closure(ob)
        candidates = oracle.opens_containing(x)
        for u in candidates[(candidates & ~np.int64(ob.bits)) == 0]:
            u_mask = SubsetMask(t.n, int(u))
            if not (ob <= cl <= u_mask):
                char_w = (x, u_mask.to_list())
                break
        if char_w is not None:
            break
    return _verdict("regular", def_w, char_w, interpretation=SATURATION_READING)


def s_unital_fixed_points(t: TopologySpace, exclude_zero: bool = False) -> SubsetMask:
    """Elements fixed by the action (``xa = x`` or ``ax = x``).

    Zero is always fixed, which makes the unqualified condition vacuous;
    ``exclude_zero`` drops it.
    """
    fixed = t.fixed_points()
    return fixed.without(t.ring.zero) if exclude_zero else fixed


def validate_cover(t: TopologySpace, cover: Sequence[SubsetMask]) -> None:
    union = 0
    for i, g in enumerate(cover):
        if g.n != t.n:
            raise InvalidCoverError(f"cover member {i} lives in a universe of size {g.n}")
        if not t.is_open(g):
            raise InvalidCoverError(f"cover member {i} = {g} is not open")
        union |= g.bits
    if union != (1 << t.n) - 1:
        missing = SubsetMask(t.n, ((1 << t.n) - 1) & ~union)
        raise InvalidCoverError(f"family does not cover the ring; missing {missing}")


def cover_witness(t: TopologySpace, cover: Sequence[SubsetMask]) -> tuple[int, int] | None:
    """First ``(x0, index)`` with ``x0`` and its successor in the same member."""
    validate_cover(t, cover)
    for i, g in enumerate(cover):
        for x in g:
            if t.successor[x] in g:
                return x, i
    return None


def base_cover(t: TopologySpace) -> list[SubsetMask]:
    return [t.orbit(x).members for x in range(t.n)]


def random_open_cover(t: TopologySpace, rng) -> list[SubsetMask]:
    """A random open cover: saturations of random subsets, topped up until covering."""
    cover = []
    covered = 0
    full = (1 << t.n) - 1
    for _ in range(rng.randint(1, 4)):
        picks = [x for x in range(t.n) if rng.random() < 0.3]
        if picks:
            g = t.saturation(t.mask(picks))
            cover.append(g)
            covered |= g.bits
    while covered != full:
        missing = [x for x in range(t.n) if not covered >> x & 1]
        g = t.saturation(t.mask(rng.sample(missing, max(1, len(missing) // 2))))
        cover.append(g)
        covered |= g.bits
    rng.shuffle(cover)
    return cover


def definitional_flags(t: TopologySpace) -> dict[str, bool]:
    return {
        "T0": t0(t).holds_definitional,
        "T1": t1(t).holds_definitional,
        "T2": t2(t).holds_definitional,
    }


def is_identity_action(t: TopologySpace) -> bool:
    return all(t.successor[x] == x for x in range(t.n))
