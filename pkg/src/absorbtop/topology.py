"""The element absorb topology on a finite ring, computed through orbits.

For an acting element ``a`` the open sets are the subsets ``I`` with
``I*a`` contained in ``I`` (right action) or ``a*I`` contained in ``I``
(left action). That family is closed under arbitrary unions and
intersections, so each point ``x`` has a smallest open neighbourhood: its
forward orbit ``{x, xa, xa^2, ...}`` under the successor map. Every
operator below reduces to reachability in the functional graph
``x -> successor(x)``; open sets are never enumerated here (see ``oracle``
for the brute-force counterpart).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import EngineInvariantError
from .ring import FiniteRing
from .subsets import SubsetMask


class ActionSide(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class OrbitSet:
    """Forward orbit of ``entry``: ``tail_length`` pre-periodic points, then a cycle."""

    entry: int
    members: SubsetMask
    sequence: tuple[int, ...]
    tail_length: int
    cycle_length: int

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.sequence[self.tail_length:]


class TopologySpace:
    """``(R, tau_a)`` for a ring, an acting element and an action side.

    The successor array is fixed at construction. Orbits are memoised on
    first use; an entry is a pure function of the immutable successor array,
    so concurrent readers that race on a miss store identical values.
    """

    def __init__(self, ring: FiniteRing, a: int, side: ActionSide | str = ActionSide.RIGHT):
        self.ring = ring
        self.a = int(a)
        self.side = ActionSide(side)
        if not 0 <= self.a < ring.order:
            raise ValueError(f"acting element {a} outside the ring")
        col = ring.mul_table[:, self.a] if self.side is ActionSide.RIGHT else ring.mul_table[self.a, :]
        self.successor: tuple[int, ...] = tuple(int(v) for v in col)
        self.n = ring.order
        self._orbits: dict[int, OrbitSet] = {}
        self._predecessors: tuple[tuple[int, ...], ...] | None = None
        self._components: list[SubsetMask] | None = None
        self._hypothesis_failure: int | None | bool = False

    def __repr__(self) -> str:
        return f"TopologySpace({self.ring!r}, a={self.ring.label(self.a)}, side={self.side.value})"

    # -- basic pieces -----------------------------------------------------

    def full(self) -> SubsetMask:
        return SubsetMask.full(self.n)

    def empty(self) -> SubsetMask:
        return SubsetMask.empty(self.n)

    def mask(self, elements) -> SubsetMask:
        return SubsetMask.of(self.n, elements)

    def step(self, x: int) -> int:
        return self.successor[x]

    def orbit(self, x: int) -> OrbitSet:
        cached = self._orbits.get(x)
        if cached is not None:
            return cached
        position: dict[int, int] = {}
        seq: list[int] = []
        y = x
        while y not in position:
            position[y] = len(seq)
            seq.append(y)
            y = self.successor[y]
        tail = position[y]
        result = OrbitSet(x, self.mask(seq), tuple(seq), tail, len(seq) - tail)
        self._orbits[x] = result
        return result

    def orbit_bits(self, x: int) -> int:
        return self.orbit(x).members.bits

    @property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        if self._predecessors is None:
            pre: list[list[int]] = [[] for _ in range(self.n)]
            for x, y in enumerate(self.successor):
                pre[y].append(x)
            self._predecessors = tuple(tuple(p) for p in pre)
        return self._predecessors

    # -- membership tests -------------------------------------------------

    def is_open(self, s: SubsetMask) -> bool:
        succ = self.successor
        return all(succ[x] in s for x in s)

    def is_closed(self, s: SubsetMask) -> bool:
        return self.is_open(s.complement())

    def is_clopen(self, s: SubsetMask) -> bool:
        return self.is_open(s) and self.is_closed(s)

    # -- operators --------------------------------------------------------

    def saturation(self, s: SubsetMask) -> SubsetMask:
        """Smallest open superset: the union of the members' orbits."""
        bits = 0
        for x in s:
            bits |= self.orbit_bits(x)
        return SubsetMask(self.n, bits)

    def closure(self, s: SubsetMask) -> SubsetMask:
        """Points whose minimal neighbourhood meets ``s``."""
        bits = s.bits
        return self.mask(x for x in range(self.n) if self.orbit_bits(x) & bits)

    def interior(self, s: SubsetMask) -> SubsetMask:
        """Points of ``s`` whose whole orbit stays inside ``s``."""
        bits = s.bits
        return self.mask(x for x in s if self.orbit_bits(x) & ~bits == 0)

    def derived_set(self, s: SubsetMask) -> SubsetMask:
        """Cluster points: ``x`` such that ``orbit(x)`` meets ``s`` away from ``x``."""
        bits = s.bits
        return self.mask(x for x in range(self.n) if self.orbit_bits(x) & bits & ~(1 << x))

    def limited_points(self, s: SubsetMask, min_power: int = 1) -> SubsetMask:
        """Points ``x`` with some ``y`` in ``s - {x}`` and ``n >= min_power``
        such that ``y`` pushed ``n`` steps lands in ``orbit(x)``.

        Any open set containing ``x`` contains ``orbit(x)``, so testing the
        minimal neighbourhood suffices. ``min_power`` is 0 or 1.
        """
        if min_power not in (0, 1):
            raise ValueError("min_power must be 0 or 1")
        reach = {}
        for y in s:
            reach[y] = self.orbit_bits(y if min_power == 0 else self.successor[y])
        total = 0
        for bits in reach.values():
            total |= bits
        out = []
        for x in range(self.n):
            if x in s:
                others = 0
                for y, bits in reach.items():
                    if y != x:
                        others |= bits
            else:
                others = total
            if others & self.orbit_bits(x):
                out.append(x)
        return self.mask(out)

    def hat_preimage(self, s: SubsetMask) -> SubsetMask:
        """``{x : successor(x) in s}``."""
        return self.mask(x for x in range(self.n) if self.successor[x] in s)

    def preimage(self, g: Sequence[int], s: SubsetMask) -> SubsetMask:
        return self.mask(x for x in range(self.n) if g[x] in s)

    def is_continuous_self_map(self, g: Sequence[int] | Callable[[int], int]) -> bool:
        """Continuity of ``g: R -> R`` checked on the base: each preimage of an orbit is open."""
        table = [g(x) for x in range(self.n)] if callable(g) else list(g)
        if len(table) != self.n or any(not 0 <= v < self.n for v in table):
            raise ValueError("g must map every element into the ring")
        return all(self.is_open(self.preimage(table, self.orbit(x).members)) for x in range(self.n))

    # -- connectedness ----------------------------------------------------

    def connected_components(self) -> list[SubsetMask]:
        """Weak components of the successor graph, ordered by least element.

        Each component is verified clopen before being returned; a set is
        then clopen exactly when it is a union of components.
        """
        if self._components is not None:
            return list(self._components)
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in enumerate(self.successor):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        blocks: dict[int, list[int]] = {}
        for x in range(self.n):
            blocks.setdefault(find(x), []).append(x)
        comps = [self.mask(b) for _, b in sorted(blocks.items())]
        for c in comps:
            if not self.is_clopen(c):
                raise EngineInvariantError(f"component {c} is not clopen")
        self._components = comps
        return list(comps)

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    def is_union_of_components(self, s: SubsetMask) -> bool:
        return all(c <= s or c.isdisjoint(s) for c in self.connected_components())

    def clopen_orbit_closure(self, x: int) -> SubsetMask:
        c = self.closure(self.orbit(x).members)
        if not (self.is_open(c) and self.is_closed(c)):
            raise EngineInvariantError(f"closure of orbit({x}) = {c} is not clopen")
        return c

    # -- fixed points -----------------------------------------------------

    def fixed_points(self) -> SubsetMask:
        return self.mask(x for x in range(self.n) if self.successor[x] == x)

    def fixed_point_hypothesis_failure(self) -> int | None:
        """First ``x`` with ``xa != x`` lying in the closure of ``orbit(xa^2)``, if any."""
        if self._hypothesis_failure is False:
            succ = self.successor
            found = None
            for x in range(self.n):
                if succ[x] != x and x in self.closure(self.orbit(succ[succ[x]]).members):
                    found = x
                    break
            self._hypothesis_failure = found
        return self._hypothesis_failure

    def fixed_point_audit(self, x0: int) -> "FixedPointVerdict":
        """Check the fixed-point statement for ``x0``.

        Compactness of ``orbit(x0)`` is automatic (finite). The second
        hypothesis asks, for every ``x`` with ``xa != x``, that ``x`` lie
        outside the closure of ``orbit(xa^2)``. When it holds, search the
        closure of ``orbit(x0)`` for a fixed point.
        """
        succ = self.successor
        failing = self.fixed_point_hypothesis_failure()
        if failing is not None:
            return FixedPointVerdict(x0, hypotheses_hold=False, failing_x=failing)
        region = self.closure(self.orbit(x0).members)
        for y in region:
            if succ[y] == y:
                return FixedPointVerdict(x0, hypotheses_hold=True, witness=y)
        return FixedPointVerdict(x0, hypotheses_hold=True, refuted=True)

    # -- export -----------------------------------------------------------

    def to_dot(self, name: str = "successor") -> str:
        return successor_dot(self, name)


@dataclass(frozen=True)
class FixedPointVerdict:
    x0: int
    hypotheses_hold: bool
    compact: bool = True
    failing_x: int | None = None
    witness: int | None = None
    refuted: bool = False


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def successor_dot(t: TopologySpace, name: str = "successor") -> str:
    """DOT digraph of ``x -> successor(x)``; nodes in index order, coloured by component."""
    comp_of = {}
    for i, c in enumerate(t.connected_components()):
        for x in c:
            comp_of[x] = i
    lines = [f"digraph {_dot_quote(name)} {{", "  node [style=filled, fontname=monospace];"]
    for x in range(t.n):
        color = _PALETTE[comp_of[x] % len(_PALETTE)]
        lines.append(f"  n{x} [label={_dot_quote(t.ring.label(x))}, fillcolor={_dot_quote(color)}];")
    for x, y in enumerate(t.successor):
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
