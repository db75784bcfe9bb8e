"""Brute-force ground truth: enumerate every open set explicitly.

Nothing here consults the engine's successor array or orbit cache. Products
are read straight from the ring's multiplication table, all ``2^n`` subsets
are filtered by the absorb condition, and every operator is recomputed from
its textbook definition by scanning the resulting list. Limited to rings of
order 16 or less (65,536 subsets).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import OracleTooLargeError
from .ring import FiniteRing
from .subsets import SubsetMask
from .topology import ActionSide, TopologySpace

ORACLE_MAX_ORDER = 16


def _image_table(ring: FiniteRing, a: int, side: ActionSide) -> list[int]:
    if side is ActionSide.RIGHT:
        return [ring.mul(x, a) for x in range(ring.order)]
    return [ring.mul(a, x) for x in range(ring.order)]


def _bit(masks: np.ndarray, x: int) -> np.ndarray:
    return (masks >> np.int64(x)) & 1


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)


@dataclass
class ExplicitTopology:
    """Every open set of ``(R, tau_a)`` as an int64 bitmask, canonically sorted."""

    ring: FiniteRing
    a: int
    side: ActionSide
    masks: np.ndarray
    lookup: np.ndarray  # lookup[m] is True iff mask m is open

    @property
    def n(self) -> int:
        return self.ring.order

    @property
    def count(self) -> int:
        return len(self.masks)

    @property
    def full_bits(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def opens(self) -> list[SubsetMask]:
        return [SubsetMask(self.n, int(m)) for m in self.masks]

    @cached_property
    def closed_masks(self) -> np.ndarray:
        return np.int64(self.full_bits) ^ self.masks

    @cached_property
    def _containing(self) -> list[np.ndarray]:
        return [self.masks[_bit(self.masks, x) == 1] for x in range(self.n)]

    def opens_containing(self, x: int) -> np.ndarray:
        return self._containing[x]

    @cached_property
    def image(self) -> list[int]:
        return _image_table(self.ring, self.a, self.side)

    # -- membership ---------------------------------------------------------

    def is_open(self, s: SubsetMask) -> bool:
        return bool(self.lookup[s.bits])

    def is_closed(self, s: SubsetMask) -> bool:
        return bool(self.lookup[self.full_bits ^ s.bits])

    # -- operators ------------------------------------------------------------

    def neighbourhood(self, x: int) -> SubsetMask:
        """Intersection of all open sets containing ``x``."""
        return SubsetMask(self.n, int(np.bitwise_and.reduce(self.opens_containing(x))))

    def closure(self, s: SubsetMask) -> SubsetMask:
        """Intersection of all closed supersets."""
        c = self.closed_masks
        supersets = c[(c & np.int64(s.bits)) == s.bits]
        return SubsetMask(self.n, int(np.bitwise_and.reduce(supersets)))

    def interior(self, s: SubsetMask) -> SubsetMask:
        """Union of all open subsets."""
        m = self.masks
        inside = m[(m & ~np.int64(s.bits)) == 0]
        return SubsetMask(self.n, int(np.bitwise_or.reduce(inside)))

    def saturation(self, s: SubsetMask) -> SubsetMask:
        """Intersection of all open supersets."""
        m = self.masks
        supersets = m[(m & np.int64(s.bits)) == s.bits]
        return SubsetMask(self.n, int(np.bitwise_and.reduce(supersets)))

    def derived_set(self, s: SubsetMask) -> SubsetMask:
        """Points every open neighbourhood of which meets ``s`` minus the point."""
        out = []
        for x in range(self.n):
            rest = np.int64(s.bits & ~(1 << x))
            if np.all(self.opens_containing(x) & rest):
                out.append(x)
        return SubsetMask.of(self.n, out)

    def push_forward(self, y: int, min_power: int) -> int:
        """Bitmask of ``{y a^k : k >= min_power}``, by repeated multiplication."""
        ring, a = self.ring, self.a
        bits = 0
        power = ring.power(a, min_power)
        for _ in range(self.n + 1):
            z = ring.mul(y, power) if self.side is ActionSide.RIGHT else ring.mul(power, y)
            bits |= 1 << z
            power = ring.mul(power, a)
        return bits

    def limited_points(self, s: SubsetMask, min_power: int = 1) -> SubsetMask:
        """Points ``x`` such that every open ``I`` containing ``x`` holds some
        ``y a^k`` with ``y`` in ``s - {x}`` and ``k >= min_power``."""
        reach = {y: self.push_forward(y, min_power) for y in s}
        out = []
        for x in range(self.n):
            w = 0
            for y, bits in reach.items():
                if y != x:
                    w |= bits
            if np.all(self.opens_containing(x) & np.int64(w)):
                out.append(x)
        return SubsetMask.of(self.n, out)

    def preimage_masks(self, g: list[int]) -> np.ndarray:
        pre = np.zeros_like(self.masks)
        for x in range(self.n):
            pre |= _bit(self.masks, g[x]) << np.int64(x)
        return pre

    def is_continuous(self, g: list[int]) -> tuple[bool, SubsetMask | None]:
        """Preimage of every open set is open; returns the first bad open set."""
        bad = ~self.lookup[self.preimage_masks(g)]
        if bad.any():
            return False, SubsetMask(self.n, int(self.masks[np.argmax(bad)]))
        return True, None

    def connected(self) -> tuple[bool, SubsetMask | None]:
        """Connected iff no proper nonempty open set has an open complement."""
        m = self.masks
        proper = (m != 0) & (m != self.full_bits)
        clopen = proper & self.lookup[np.int64(self.full_bits) ^ m]
        if clopen.any():
            return False, SubsetMask(self.n, int(m[np.argmax(clopen)]))
        return True, None

    # -- separation, straight from the definitions --------------------------

    def t0(self) -> tuple[bool, tuple[int, int] | None]:
        """Some open set contains exactly one point of each distinct pair."""
        for x in range(self.n):
            bx = _bit(self.masks, x)
            for y in range(x + 1, self.n):
                if not np.any(bx != _bit(self.masks, y)):
                    return False, (x, y)
        return True, None

    def t1(self) -> tuple[bool, tuple[int, int] | None]:
        """Every singleton is closed."""
        for x in range(self.n):
            if not self.lookup[self.full_bits ^ (1 << x)]:
                cl = self.closure(SubsetMask.singleton(self.n, x))
                y = next(v for v in cl if v != x)
                return False, (min(x, y), max(x, y))
        return True, None

    def t2(self) -> tuple[bool, tuple[int, int] | None]:
        """Distinct points have disjoint open neighbourhoods.

        The intersection of all opens containing a point is itself in the
        list (checked), so disjointness of those smallest neighbourhoods
        decides the existence of any disjoint pair.
        """
        nb = [self.neighbourhood(x) for x in range(self.n)]
        for x, s in enumerate(nb):
            if not self.is_open(s):
                raise AssertionError(f"intersection of opens containing {x} is not open")
        for x in range(self.n):
            for y in range(x + 1, self.n):
                if not nb[x].isdisjoint(nb[y]):
                    return False, (x, y)
        return True, None

    # -- lattice laws -------------------------------------------------------

    def verify_lattice(self) -> dict | None:
        """Check the explicit list is a topology; return a witness on failure.

        Contains the empty set and the whole space, and is closed under
        pairwise union and intersection. Small lists are checked on every
        pair. Large lists are checked through the neighbourhood base: every
        open set must equal the union of the neighbourhoods of its points,
        and ``A | N`` and ``A & N`` must be open for every open ``A`` and
        neighbourhood ``N``; union closure then follows by induction over
        the decomposition, and ``A & (N1 | ... | Nk)`` is the union of the
        ``A & Ni``.
        """
        m = self.masks
        if not self.lookup[0]:
            return {"law": "contains-empty"}
        if not self.lookup[self.full_bits]:
            return {"law": "contains-whole-space"}
        if self.count ** 2 <= 1 << 22:
            for i in range(self.count):
                u = m[i] | m
                bad = ~self.lookup[u]
                if bad.any():
                    return {"law": "pairwise-union", "sets": [int(m[i]), int(m[np.argmax(bad)])]}
                v = m[i] & m
                bad = ~self.lookup[v]
                if bad.any():
                    return {"law": "pairwise-intersection", "sets": [int(m[i]), int(m[np.argmax(bad)])]}
            return None
        nb = np.array([self.neighbourhood(x).bits for x in range(self.n)], dtype=np.int64)
        for x in range(self.n):
            if not self.lookup[nb[x]]:
                return {"law": "neighbourhood-open", "point": x}
        recomposed = np.zeros_like(m)
        for x in range(self.n):
            recomposed |= np.where(_bit(m, x) == 1, nb[x], 0)
        if np.any(recomposed != m):
            return {"law": "base-decomposition", "sets": [int(m[np.argmax(recomposed != m)])]}
        for x in range(self.n):
            for law, combined in (("pairwise-union", m | nb[x]), ("pairwise-intersection", m & nb[x])):
                bad = ~self.lookup[combined]
                if bad.any():
                    return {"law": law, "sets": [int(m[np.argmax(bad)]), int(nb[x])]}
        return None


def enumerate_topology(t: TopologySpace) -> ExplicitTopology:
    """List every subset ``S`` with ``S*a`` (or ``a*S``) inside ``S``."""
    ring = t.ring
    n = ring.order
    if n > ORACLE_MAX_ORDER:
        raise OracleTooLargeError(n, ORACLE_MAX_ORDER)
    image = _image_table(ring, t.a, t.side)
    allm = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for x in range(n):
        ok &= (_bit(allm, x) == 0) | (_bit(allm, image[x]) == 1)
    opens = allm[ok]
    # Canonical order: cardinality, then lexicographic on the sorted member
    # list. Among equal-size sets the one holding the least element of the
    # symmetric difference comes first, i.e. larger bit-reversed mask first.
    reversed_bits = np.zeros_like(opens)
    for x in range(n):
        reversed_bits |= _bit(opens, x) << np.int64(n - 1 - x)
    opens = opens[np.lexsort((-reversed_bits, _popcount(opens)))]
    return ExplicitTopology(ring, t.a, t.side, opens, ok)


def count_open_sets_dfs(t: TopologySpace) -> int:
    """Count absorbing subsets by constraint-propagating search, without bitmask
    filtering: putting ``x`` in forces its image in, leaving ``x`` out forces
    every element mapping to ``x`` out."""
    ring = t.ring
    n = ring.order
    image = _image_table(ring, t.a, t.side)
    pre: list[list[int]] = [[] for _ in range(n)]
    for x, y in enumerate(image):
        pre[y].append(x)

    def assign(state: list, x: int, value: bool) -> bool:
        stack = [(x, value)]
        while stack:
            y, v = stack.pop()
            if state[y] is None:
                state[y] = v
                if v:
                    stack.append((image[y], True))
                else:
                    stack.extend((p, False) for p in pre[y])
            elif state[y] != v:
                return False
        return True

    def search(state: list) -> int:
        try:
            x = state.index(None)
        except ValueError:
            return 1
        total = 0
        for value in (False, True):
            branch = list(state)
            if assign(branch, x, value):
                total += search(branch)
        return total

    return search([None] * n)
