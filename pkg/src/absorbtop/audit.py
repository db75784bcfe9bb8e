"""Exhaustive auditing of the numbered claims about element absorb topologies.

An audit runs over a corpus of ``(ring, acting element, side)`` instances.
Each claim evaluator returns one of three verdicts per instance:

* ``holds`` -- hypothesis and conclusion both checked on the instance;
* ``fails`` -- the conclusion is false here; ``witness`` says why;
* ``not-applicable`` -- a guard excludes the instance; ``guard`` says which.

Records carry the ring spec inline so ``absorbtop describe --claim`` can
replay any single verdict.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable

from . import separation as sep
from .errors import EngineInvariantError, UnknownClaimError
from .oracle import ORACLE_MAX_ORDER, ExplicitTopology, enumerate_topology
from .ring import FiniteRing, idempotents, pierce_decompose
from .specs import build_ring, describe_spec, ring_ref
from .subsets import SubsetMask
from .topology import ActionSide, TopologySpace

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"

DEFAULT_SEED = 7
RANDOM_COVERS = 100
RANDOM_FAMILIES = 20
REPORT_SCHEMA = "absorbtop.audit/1"


# -- corpus ------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    ring: FiniteRing
    a: int
    side: ActionSide

    @cached_property
    def ring_key(self) -> str:
        ref = ring_ref(self.ring)
        return ref if isinstance(ref, str) else json.dumps(ref, sort_keys=True, separators=(",", ":"))

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.ring_key, self.side.value, self.a)

    def ref(self) -> dict:
        return {"ring": ring_ref(self.ring), "a": self.ring.label(self.a), "side": self.side.value}

    @property
    def family(self) -> str:
        short = describe_spec(self.ring.spec)
        return short.split(":", 1)[0] if short else "tables"

    def space(self) -> TopologySpace:
        return TopologySpace(self.ring, self.a, self.side)


@dataclass
class AuditCorpus:
    instances: list[Instance]
    provenance: dict[str, Any]

    @property
    def seed(self) -> int:
        return int(self.provenance.get("seed", DEFAULT_SEED))

    def __len__(self) -> int:
        return len(self.instances)


def _both_sides(ring: FiniteRing, elements: Iterable[int]) -> list[Instance]:
    return [Instance(ring, a, side) for a in elements for side in (ActionSide.RIGHT, ActionSide.LEFT)]


def default_corpus(max_order: int = 16, seed: int = DEFAULT_SEED) -> AuditCorpus:
    """Deterministic instance list for the audit.

    Every ``Z_n`` with ``n <= min(max_order, 16)``, the products
    ``Z_2 x Z_2`` and ``Z_2 x Z_3``, and the upper-triangular ring over
    ``F_2`` run every acting element on both sides. ``M_2(F_2)`` runs its
    idempotents plus a seeded sample of other elements. Above order 16 the
    corpus gains engine-only rings: upper-triangular over ``F_3`` (all
    idempotents), ``M_2(F_3)`` and ``Z_16 x Z_16`` (seeded samples).
    """
    if not 2 <= max_order <= 4096:
        raise ValueError(f"max_order must lie in [2, 4096], got {max_order}")
    rng = random.Random(f"corpus:{seed}")
    instances: list[Instance] = []
    generators: list[str] = []

    def admit(spec: str) -> FiniteRing | None:
        ring = build_ring(spec)
        if ring.order > max_order:
            return None
        generators.append(spec)
        return ring

    for n in range(2, min(max_order, 16) + 1):
        ring = admit(f"zn:{n}")
        instances += _both_sides(ring, ring.elements())
    for spec in ("prod:zn:2,zn:2", "prod:zn:2,zn:3", "ut:f2"):
        ring = admit(spec)
        if ring is not None:
            instances += _both_sides(ring, ring.elements())
    ring = admit("m2:f2")
    if ring is not None:
        idem = idempotents(ring).elements
        others = [x for x in ring.elements() if x not in idem]
        instances += _both_sides(ring, sorted(idem + tuple(rng.sample(others, 4))))
    ring = admit("ut:f3")
    if ring is not None:
        instances += _both_sides(ring, idempotents(ring).elements)
    for spec, sample in (("m2:f3", 8), ("prod:zn:16,zn:16", 8)):
        ring = admit(spec)
        if ring is not None:
            idem = idempotents(ring).elements if spec.startswith("m2") else ()
            others = [x for x in ring.elements() if x not in idem]
            instances += _both_sides(ring, sorted(set(idem) | set(rng.sample(others, sample))))
    return AuditCorpus(instances, {"generators": generators, "seed": seed, "max_order": max_order})


# -- per-instance context ----------------------------------------------------


class InstanceContext:
    """Shared, lazily-built state for evaluating every claim on one instance."""

    def __init__(self, instance: Instance, seed: int = DEFAULT_SEED):
        self.instance = instance
        self.seed = seed
        self.space = instance.space()
        self.ring = instance.ring

    @cached_property
    def oracle(self) -> ExplicitTopology | None:
        if self.ring.order > ORACLE_MAX_ORDER:
            return None
        return enumerate_topology(self.space)

    def rng(self, purpose: str) -> random.Random:
        ring_key, side, a = self.instance.key
        return random.Random(f"{purpose}:{self.seed}:{ring_key}:{side}:{a}")

    def labels(self, s: SubsetMask | Iterable[int]) -> list[str]:
        return [self.ring.label(x) for x in s]

    def label(self, x: int) -> str:
        return self.ring.label(x)

    @cached_property
    def pierce(self):
        """Side-matched Pierce split for an idempotent acting element, else None."""
        if not self.ring.is_idempotent(self.instance.a):
            return None
        return pierce_decompose(self.ring, self.instance.a, self.instance.side.value)

    @property
    def part_names(self) -> tuple[str, str]:
        """Display names of the two Pierce summands for this action side."""
        if self.instance.side is ActionSide.RIGHT:
            return "Re", "R(1-e)"
        return "eR", "(1-e)R"

    def idempotent_guard(self) -> str | None:
        """Reason the instance is excluded from the idempotent claims, or None."""
        a = self.instance.a
        if not self.ring.is_idempotent(a):
            return "acting element is not idempotent"
        if a in (self.ring.zero, self.ring.one):
            return "e is trivial (e in {0, 1})"
        return None


@dataclass
class ClaimVerdict:
    claim: str
    instance: Instance
    verdict: str
    witness: dict | None = None
    guard: str | None = None
    detail: dict | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"claim": self.claim, "instance": self.instance.ref(), "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.guard is not None:
            out["guard"] = self.guard
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class ClaimReport:
    claim: str
    verdicts: list[ClaimVerdict] = field(default_factory=list)

    def tally(self) -> dict[str, int]:
        counts = {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0}
        for v in self.verdicts:
            counts[v.verdict] += 1
        return counts

    def failures(self) -> list[ClaimVerdict]:
        return [v for v in self.verdicts if v.verdict == FAILS]


# -- claim evaluators --------------------------------------------------------

Outcome = tuple[str, "dict | None", "str | None", "dict | None"]


def _holds(detail: dict | None = None, guard: str | None = None) -> Outcome:
    return HOLDS, None, guard, detail


def _fails(witness: dict, guard: str | None = None, detail: dict | None = None) -> Outcome:
    return FAILS, witness, guard, detail


def _skip(reason: str) -> Outcome:
    return NOT_APPLICABLE, None, reason, None


def _random_families(ctx: InstanceContext, purpose: str) -> list[list[SubsetMask]]:
    rng = ctx.rng(purpose)
    base = sep.base_cover(ctx.space)
    return [rng.sample(base, rng.randint(1, ctx.space.n)) for _ in range(RANDOM_FAMILIES)]


def check_topology_laws(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    if not (t.is_open(t.empty()) and t.is_open(t.full())):
        return _fails({"law": "empty and whole space open"})
    o = ctx.oracle
    if o is not None:
        bad = o.verify_lattice()
        if bad is not None:
            if "sets" in bad:
                bad["sets"] = [ctx.labels(SubsetMask(t.n, m)) for m in bad["sets"]]
            return _fails(bad)
        for x in range(t.n):
            if not o.is_open(t.orbit(x).members):
                return _fails({"law": "engine base open appears in explicit list", "x": ctx.label(x)})
        return _holds({"open_sets": o.count, "checked_by": "explicit enumeration"})
    for fam in _random_families(ctx, "laws"):
        union = t.empty()
        for g in fam:
            union |= g
        if not t.is_open(union):
            return _fails({"law": "union of base opens", "sets": [ctx.labels(g) for g in fam]})
        for g in fam:
            if not t.is_open(g & fam[0]):
                return _fails({"law": "pairwise intersection", "sets": [ctx.labels(g), ctx.labels(fam[0])]})
    return _holds({"checked_by": "engine with seeded base families"})


def check_arbitrary_unions_intersections(ctx: InstanceContext) -> Outcome:
    """Any intersection of opens is open; any union of closed sets is closed."""
    t = ctx.space
    o = ctx.oracle
    families: list[list[SubsetMask]]
    if o is not None:
        for x in range(t.n):
            if not o.is_open(o.neighbourhood(x)):
                return _fails({"law": "intersection of all opens containing x", "x": ctx.label(x)})
        rng = ctx.rng("families")
        families = [rng.sample(o.opens, rng.randint(1, min(8, o.count))) for _ in range(RANDOM_FAMILIES)]
    else:
        families = _random_families(ctx, "families")
    for fam in families:
        meet, join_closed = t.full(), t.empty()
        for g in fam:
            meet &= g
            join_closed |= g.complement()
        if not t.is_open(meet):
            return _fails({"law": "intersection of opens", "sets": [ctx.labels(g) for g in fam]})
        if not t.is_closed(join_closed):
            return _fails({"law": "union of closed sets", "sets": [ctx.labels(g.complement()) for g in fam]})
    return _holds()


def check_continuity(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    if not t.is_continuous_self_map(t.successor):
        return _fails({"map": "successor", "checked_by": "engine"})
    if ctx.oracle is not None:
        ok, bad = ctx.oracle.is_continuous(list(ctx.oracle.image))
        if not ok:
            return _fails({"map": "successor", "checked_by": "oracle", "open_set": ctx.labels(bad)})
    return _holds()


def check_minimal_base(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    ring = ctx.ring
    for x in range(t.n):
        orbit = t.orbit(x).members
        if not t.is_open(orbit):
            return _fails({"part": "orbit is open", "x": ctx.label(x)})
        # orbit recomputed from ring arithmetic: {x a^k : 0 <= k <= n}
        power, direct = ring.one, 0
        for _ in range(t.n + 1):
            direct |= 1 << (ring.mul(x, power) if t.side is ActionSide.RIGHT else ring.mul(power, x))
            power = ring.mul(power, t.a)
        if direct != orbit.bits:
            return _fails({"part": "orbit equals {x, xa, ...}", "x": ctx.label(x)})
        if ctx.oracle is not None and ctx.oracle.neighbourhood(x) != orbit:
            return _fails({"part": "orbit is the smallest open set containing x", "x": ctx.label(x)})
    if ctx.oracle is not None:
        for s in ctx.oracle.opens:
            if t.saturation(s) != s:
                return _fails({"part": "orbits form a base", "open_set": ctx.labels(s)})
    split = ctx.pierce
    if split is not None:
        for x in split.left_part:
            if t.orbit(x).members != t.mask([x]):
                return _fails({"part": "orbit of a point of Re is a singleton", "x": ctx.label(x)})
        for x in split.complement_part:
            if t.orbit(x).members != t.mask([x, ring.zero]):
                return _fails({"part": "orbit of a point of R(1-e) is {x, 0}", "x": ctx.label(x)})
    return _holds({"idempotent_cases_checked": split is not None})


def _separation_claim(axiom: Callable[[TopologySpace], sep.AxiomVerdict], oracle_name: str):
    def check(ctx: InstanceContext) -> Outcome:
        v = axiom(ctx.space)
        detail = {"definitional": v.holds_definitional, "characterization": v.holds_characterization}
        witness: dict[str, Any] = {}
        if not v.agree:
            witness["mismatch"] = "definitional and characterization verdicts differ"
            witness["definitional_witness"] = _label_pair(ctx, v.details["definitional_witness"])
            witness["characterization_witness"] = _label_pair(ctx, v.details["characterization_witness"])
        if ctx.oracle is not None:
            ok, pair = getattr(ctx.oracle, oracle_name)()
            detail["oracle"] = ok
            if ok != v.holds_definitional:
                witness["oracle_disagrees"] = _label_pair(ctx, pair or v.witness)
        if witness:
            witness.update(detail)
            return _fails(witness)
        if v.witness is not None:
            detail["pair"] = _label_pair(ctx, v.witness)
        return _holds(detail)

    return check


def _label_pair(ctx: InstanceContext, pair) -> list[str] | None:
    if pair is None:
        return None
    return [ctx.label(x) for x in pair]


def check_regularity(ctx: InstanceContext) -> Outcome:
    if ctx.oracle is None:
        return _skip(f"order > {ORACLE_MAX_ORDER}: closed sets need explicit enumeration")
    v = sep.regular(ctx.space, ctx.oracle)
    detail = {
        "definitional": v.holds_definitional,
        "characterization": v.holds_characterization,
        "interpretation": v.interpretation,
    }
    if not v.agree:
        dw, cw = v.details["definitional_witness"], v.details["characterization_witness"]
        return _fails(
            {
                "mismatch": "definitional and characterization verdicts differ",
                "definitional_witness": None if dw is None else {"x": ctx.label(dw[0]), "F": ctx.labels(dw[1])},
                "characterization_witness": None if cw is None else {"x": ctx.label(cw[0]), "U": ctx.labels(cw[1])},
                **detail,
            }
        )
    return _holds(detail)


def check_cover_property(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    hausdorff = sep.t2(t).holds_definitional
    fixed = sep.s_unital_fixed_points(t, exclude_zero=True)
    opposite = TopologySpace(ctx.ring, t.a, ActionSide.LEFT if t.side is ActionSide.RIGHT else ActionSide.RIGHT)
    detail = {
        "fixed_points_nonzero": ctx.labels(fixed),
        "opposite_side_fixed_points_nonzero": ctx.labels(sep.s_unital_fixed_points(opposite, exclude_zero=True)),
    }
    if not hausdorff:
        return _skip("space is not Hausdorff")
    rng = ctx.rng("covers")
    covers = [sep.base_cover(t)] + [sep.random_open_cover(t, rng) for _ in range(RANDOM_COVERS)]
    missing = next((i for i, c in enumerate(covers) if sep.cover_witness(t, c) is None), None)
    cover_property = missing is None
    s_unital = len(fixed) > 0
    detail.update({"s_unital": s_unital, "cover_property": cover_property, "covers_checked": len(covers)})
    if s_unital != cover_property:
        witness = {"mismatch": "S-unital status differs from the cover property", **detail}
        if missing is not None:
            witness["cover_without_witness"] = [ctx.labels(g) for g in covers[missing]]
        return _fails(witness)
    return _holds(detail)


def check_orbit_closure_clopen(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    for x in range(t.n):
        try:
            c = t.clopen_orbit_closure(x)
        except EngineInvariantError as exc:
            return _fails({"x": ctx.label(x), "error": str(exc)})
        if ctx.oracle is not None and not (ctx.oracle.is_open(c) and ctx.oracle.is_closed(c)):
            return _fails({"x": ctx.label(x), "closure": ctx.labels(c), "checked_by": "oracle"})
    return _holds()


def check_disconnected(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    comps = t.connected_components()
    engine_connected = len(comps) == 1
    detail: dict[str, Any] = {"components": len(comps)}
    if ctx.oracle is not None:
        oracle_connected, clopen = ctx.oracle.connected()
        if oracle_connected != engine_connected:
            return _fails({"mismatch": "engine components and oracle clopen scan disagree",
                           "engine_connected": engine_connected, "oracle_connected": oracle_connected})
        verified_by = "oracle"
    else:
        verified_by = "engine components"
    if engine_connected:
        return _fails({"reason": "no proper nonempty clopen exists", "verified_by": verified_by,
                       "components": 1})
    detail["clopen"] = ctx.labels(comps[0])
    return _holds(detail)


def check_fixed_point(ctx: InstanceContext) -> Outcome:
    t = ctx.space
    failing = t.fixed_point_hypothesis_failure()
    if failing is not None:
        return _skip(f"hypothesis fails at x = {ctx.label(failing)}: x lies in the closure of O(xa^2)")
    witnesses = {}
    for x0 in range(t.n):
        v = t.fixed_point_audit(x0)
        if v.refuted:
            return _fails({"x0": ctx.label(x0), "reason": "no fixed point in the closure of O(x0)"})
        witnesses[ctx.label(x0)] = ctx.label(v.witness)
    return _holds({"fixed_point_for": witnesses} if t.n <= 32 else None)


def _is_one_sided_ideal(ctx: InstanceContext, s: SubsetMask) -> bool:
    """Additive subgroup absorbing ring multiplication from the side opposite the action."""
    ring = ctx.ring
    left = ctx.space.side is ActionSide.RIGHT
    for x in s:
        for y in s:
            if ring.add(x, y) not in s:
                return False
        for r in ring.elements():
            if (ring.mul(r, x) if left else ring.mul(x, r)) not in s:
                return False
    return ring.zero in s


def check_re_open_dense(ctx: InstanceContext) -> Outcome:
    guard = ctx.idempotent_guard()
    if guard:
        return _skip(guard)
    t, split = ctx.space, ctx.pierce
    name, _ = ctx.part_names
    part = split.left_part
    failed = []
    if not t.is_open(part):
        failed.append(f"{name} is open")
    if not t.closure(part).is_full():
        failed.append(f"closure({name}) = R")
    derived = t.derived_set(part)
    if derived != part.complement():
        failed.append(f"derived set of {name} = R - {name}")
    if not _is_one_sided_ideal(ctx, part):
        failed.append(f"{name} is a one-sided ideal")
    if failed:
        return _fails({"failed": failed, name: ctx.labels(part), "derived_set": ctx.labels(derived)},
                      guard="e nontrivial")
    return _holds({name: ctx.labels(part)}, guard="e nontrivial")


def check_complement_open_not_closed(ctx: InstanceContext) -> Outcome:
    guard = ctx.idempotent_guard()
    if guard:
        return _skip(guard)
    t, split = ctx.space, ctx.pierce
    e_name, f_name = ctx.part_names
    re, rf = split.left_part, split.complement_part
    expected = re.complement() & rf.complement()
    derived = t.derived_set(rf)
    failed = []
    if not t.is_open(rf):
        failed.append(f"{f_name} is open")
    if t.is_closed(rf):
        failed.append(f"{f_name} is not closed")
    if derived != expected:
        failed.append(f"derived set of {f_name} = (R - {e_name}) & (R - {f_name})")
    if not _is_one_sided_ideal(ctx, rf):
        failed.append(f"{f_name} is a one-sided ideal")
    if failed:
        return _fails(
            {
                "failed": failed,
                f_name: ctx.labels(rf),
                "derived_set": ctx.labels(derived),
                "claimed_derived_set": ctx.labels(expected),
                f"complement of {f_name} is open": t.is_open(rf.complement()),
            },
            guard="e nontrivial",
        )
    return _holds(guard="e nontrivial")


EXAMPLE_RING = "ut:f2"
EXAMPLE_ELEMENT = "[[1,1],[0,0]]"
_TOP_ROW_ONLY = re.compile(r"^\[\[[^\[\]]+,[^\[\]]+\],\[0,0\]\]$")


def check_worked_example(ctx: InstanceContext) -> Outcome:
    inst = ctx.instance
    if not (describe_spec(ctx.ring.spec) == EXAMPLE_RING and ctx.label(inst.a) == EXAMPLE_ELEMENT
            and inst.side is ActionSide.LEFT):
        return _skip(f"only the instance ({EXAMPLE_RING}, {EXAMPLE_ELEMENT}, left)")
    t = ctx.space
    er = ctx.pierce.left_part
    failed = []
    if len(er) != 4:
        failed.append("eR has 4 elements")
    if not all(_TOP_ROW_ONLY.match(ctx.label(x)) for x in er):
        failed.append("eR = [[*,*],[0,0]]")
    if not t.is_open(er):
        failed.append("eR is open")
    if not t.closure(er).is_full():
        failed.append("eR is dense")
    detail = {"eR": ctx.labels(er), "(1-e)R": ctx.labels(ctx.pierce.complement_part)}
    if failed:
        return _fails({"failed": failed, **detail})
    return _holds(detail)


@dataclass(frozen=True)
class Claim:
    id: str
    title: str
    check: Callable[[InstanceContext], Outcome]


CLAIMS: dict[str, Claim] = {
    c.id: c
    for c in [
        Claim("Prop-2.2", "tau_a is a topology", check_topology_laws),
        Claim("Rem-2.4", "intersections of opens / unions of closed sets", check_arbitrary_unions_intersections),
        Claim("Thm-2.5", "x -> xa is continuous", check_continuity),
        Claim("Rem-2.7", "orbits are the minimal open base", check_minimal_base),
        Claim("Thm-2.8", "T0 characterization", _separation_claim(sep.t0, "t0")),
        Claim("Thm-2.9", "T1 characterization", _separation_claim(sep.t1, "t1")),
        Claim("Thm-2.10", "T2 characterization", _separation_claim(sep.t2, "t2")),
        Claim("Thm-2.11", "regularity characterization", check_regularity),
        Claim("Thm-2.12", "S-unital iff cover property (Hausdorff)", check_cover_property),
        Claim("Lemma-2.13", "closure of an orbit is clopen", check_orbit_closure_clopen),
        Claim("Cor-2.15", "the space is disconnected", check_disconnected),
        Claim("Thm-2.16", "fixed point in the orbit closure", check_fixed_point),
        Claim("Thm-3.1", "Re is open, dense, with derived set R - Re", check_re_open_dense),
        Claim("Thm-3.2", "R(1-e) is open and not closed", check_complement_open_not_closed),
        Claim("Ex-3.3", "eR is open and dense in upper-triangular F2", check_worked_example),
    ]
}
CLAIM_ORDER = list(CLAIMS)


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaimError(claim_id) from None


def evaluate(claim_id: str, ctx: InstanceContext) -> ClaimVerdict:
    verdict, witness, guard, detail = get_claim(claim_id).check(ctx)
    return ClaimVerdict(claim_id, ctx.instance, verdict, witness, guard, detail)


def audit_claims(
    corpus: AuditCorpus, claim_ids: Iterable[str] | None = None
) -> list[ClaimReport]:
    """Evaluate several claims, sharing per-instance state between them."""
    ids = list(claim_ids) if claim_ids is not None else CLAIM_ORDER
    for cid in ids:
        get_claim(cid)
    reports = {cid: ClaimReport(cid) for cid in ids}
    for inst in sorted(corpus.instances, key=lambda i: i.key):
        ctx = InstanceContext(inst, corpus.seed)
        for cid in ids:
            reports[cid].verdicts.append(evaluate(cid, ctx))
    return [reports[cid] for cid in ids]


def audit_claim(claim_id: str, corpus: AuditCorpus) -> ClaimReport:
    return audit_claims(corpus, [claim_id])[0]


def replay(claim_id: str, ring_spec: str | dict, a: str | int, side: str, seed: int = DEFAULT_SEED) -> ClaimVerdict:
    """Re-evaluate one claim on one instance, exactly as the audit did."""
    ring = build_ring(ring_spec)
    inst = Instance(ring, ring.element(a), ActionSide(side))
    return evaluate(claim_id, InstanceContext(inst, seed))


# -- reports -----------------------------------------------------------------

_VERDICT_RANK = {FAILS: 0, HOLDS: 1, NOT_APPLICABLE: 2}


def _records(reports: list[ClaimReport]) -> list[dict]:
    rows = []
    for rep in reports:
        for v in rep.verdicts:
            rows.append((_VERDICT_RANK[v.verdict], CLAIM_ORDER.index(v.claim), v.instance.key, v.to_dict()))
    rows.sort(key=lambda r: r[:3])
    return [r[3] for r in rows]


def summary(reports: list[ClaimReport]) -> dict[str, dict[str, int]]:
    return {rep.claim: rep.tally() for rep in reports}


def emit_report(reports: list[ClaimReport], format: str = "json", config: dict | None = None) -> str:
    """Serialize deterministically; failing verdicts come first."""
    if format == "json":
        doc = {
            "schema": REPORT_SCHEMA,
            "config": config or {},
            "summary": summary(reports),
            "records": _records(reports),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "markdown":
        return _markdown(reports, config)
    raise ValueError(f"unknown report format {format!r}")


def _markdown(reports: list[ClaimReport], config: dict | None) -> str:
    lines = ["# Claim audit", ""]
    if config:
        lines.append("Config: " + ", ".join(f"{k}={config[k]}" for k in sorted(config)))
        lines.append("")
    lines += [
        "| claim | instance class | holds | fails | not applicable | first failing instance |",
        "|---|---|---:|---:|---:|---|",
    ]
    for rep in reports:
        groups: dict[str, list[ClaimVerdict]] = {}
        for v in sorted(rep.verdicts, key=lambda v: v.instance.key):
            groups.setdefault(f"{v.instance.family}/{v.instance.side.value}", []).append(v)
        for cls in sorted(groups):
            vs = groups[cls]
            counts = {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0}
            for v in vs:
                counts[v.verdict] += 1
            first = next((v for v in vs if v.verdict == FAILS), None)
            where = ""
            if first is not None:
                ref = first.instance.ref()
                ring = ref["ring"] if isinstance(ref["ring"], str) else "tables"
                where = f"`{ring}` a=`{ref['a']}`"
            lines.append(
                f"| {rep.claim} | {cls} | {counts[HOLDS]} | {counts[FAILS]} | {counts[NOT_APPLICABLE]} | {where} |"
            )
    return "\n".join(lines) + "\n"
