"""Acceptance criteria, one test per criterion, each printing PASS/FAIL."""

import json
import random
import time

import pytest

from absorbtop import separation as sep
from absorbtop.audit import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    InstanceContext,
    Instance,
    audit_claim,
    default_corpus,
    evaluate,
)
from absorbtop.cli import main
from absorbtop.oracle import ORACLE_MAX_ORDER, enumerate_topology
from absorbtop.ring import pierce_decompose
from absorbtop.specs import build_ring
from absorbtop.subsets import SubsetMask
from absorbtop.topology import ActionSide, TopologySpace

from conftest import CRITERION_LINES

pytestmark = pytest.mark.acceptance


def report(number, title, ok, detail=""):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    CRITERION_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def corpus16():
    return default_corpus(16)


@pytest.fixture(scope="module")
def corpus256():
    return default_corpus(256)


def oracle_instances(corpus):
    return [i for i in corpus.instances if i.ring.order <= ORACLE_MAX_ORDER]


def test_1_oracle_equivalence(corpus16):
    start = time.perf_counter()
    bad = []
    for inst in oracle_instances(corpus16):
        t = inst.space()
        o = enumerate_topology(t)
        rng = random.Random(f"equivalence:{inst.key}")
        for _ in range(200):
            s = SubsetMask(t.n, rng.getrandbits(t.n))
            pairs = [
                (t.closure(s), o.closure(s)),
                (t.interior(s), o.interior(s)),
                (t.derived_set(s), o.derived_set(s)),
                (t.limited_points(s, 0), o.limited_points(s, 0)),
                (t.limited_points(s, 1), o.limited_points(s, 1)),
                (t.saturation(s), o.saturation(s)),
                (t.is_open(s), o.is_open(s)),
                (t.is_closed(s), o.is_closed(s)),
            ]
            if any(x != y for x, y in pairs):
                bad.append((inst.key, s.to_list()))
                break
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(1, "engine operators equal oracle recomputation", ok, f"{elapsed:.1f}s, mismatches={bad[:3]}")
    assert not bad
    assert elapsed < 60


def test_2_topology_laws(corpus16):
    start = time.perf_counter()
    bad = []
    for inst in oracle_instances(corpus16):
        t = inst.space()
        o = enumerate_topology(t)
        if o.verify_lattice() is not None or not o.is_open(t.empty()) or not o.is_open(t.full()):
            bad.append(inst.key)
        if not all(o.is_open(t.orbit(x).members) for x in range(t.n)):
            bad.append(inst.key)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    report(2, "explicit open lists are topologies containing the engine base", ok, f"{elapsed:.1f}s")
    assert ok, bad


def test_3_orbit_closures_clopen(corpus256):
    start = time.perf_counter()
    pairs = 0
    bad = []
    for inst in corpus256.instances:
        t = inst.space()
        for x in range(t.n):
            c = t.closure(t.orbit(x).members)
            pairs += 1
            if not (t.is_open(c) and t.is_closed(c)):
                bad.append((inst.key, x))
    elapsed = time.perf_counter() - start
    orders = {i.ring.order for i in corpus256.instances}
    ok = not bad and elapsed < 60 and max(orders) > ORACLE_MAX_ORDER
    report(3, "closure of every orbit is clopen", ok, f"{pairs} pairs, max order {max(orders)}, {elapsed:.1f}s")
    assert ok, bad[:5]


def test_4_separation_characterizations(corpus16):
    disagreements, mismatches, three_way = [], [], []
    for inst in oracle_instances(corpus16):
        t = inst.space()
        o = enumerate_topology(t)
        verdicts = {"T0": sep.t0(t), "T1": sep.t1(t), "T2": sep.t2(t)}
        oracle = {"T0": o.t0()[0], "T1": o.t1()[0], "T2": o.t2()[0]}
        for name, v in verdicts.items():
            if v.holds_definitional != oracle[name]:
                disagreements.append((inst.key, name))
            if not v.agree:
                # a mismatch is acceptable only with a witness on the power-0/power-1 boundary
                x, y = v.witness
                boundary = x not in sep.strict_orbit(t, x) or y not in sep.strict_orbit(t, y)
                if not boundary:
                    mismatches.append((inst.key, name, v.witness))
        identity = sep.is_identity_action(t)
        if not (verdicts["T1"].holds_definitional == verdicts["T2"].holds_definitional == identity):
            three_way.append(inst.key)
    ok = not (disagreements or mismatches or three_way)
    report(4, "separation verdicts match the oracle; T1 <=> T2 <=> identity action", ok,
           f"oracle disagreements={len(disagreements)}, unexplained mismatches={len(mismatches)}, "
           f"three-way failures={len(three_way)}")
    assert ok


def _pierce_parts(corpus):
    for inst in corpus.instances:
        r = inst.ring
        if r.is_idempotent(inst.a) and inst.a not in (r.zero, r.one):
            t = inst.space()
            split = pierce_decompose(r, inst.a, inst.side.value)
            yield inst, t, split.left_part, split.complement_part


def test_5a_re_open_dense(corpus16):
    start = time.perf_counter()
    bad, count = [], 0
    for inst, t, re, rf in _pierce_parts(corpus16):
        count += 1
        if not (t.is_open(re) and t.closure(re).is_full() and t.derived_set(re) == re.complement()):
            bad.append(inst.key)
    elapsed = time.perf_counter() - start
    ok = count > 0 and not bad and elapsed < 30
    report("5a", "Re open, closure(Re) = R, derived(Re) = R - Re", ok, f"{count} idempotent instances")
    assert ok, bad


def test_5b_complement_open(corpus16):
    bad, count = [], 0
    for inst, t, re, rf in _pierce_parts(corpus16):
        count += 1
        if not t.is_open(rf):
            bad.append(inst.key)
    ok = count > 0 and not bad
    report("5b", "R(1-e) is open", ok, f"{count} idempotent instances")
    assert ok, bad


def test_5c_complement_not_closed(corpus16):
    closed = []
    count = 0
    for inst, t, re, rf in _pierce_parts(corpus16):
        count += 1
        if t.is_closed(rf):
            closed.append(inst.key)
    ok = count > 0 and not closed
    report("5c", "R(1-e) is not closed", ok, f"closed on {len(closed)} of {count} idempotent instances")
    assert ok, f"R(1-e) is closed on {len(closed)} of {count} instances, e.g. {closed[:3]}"


def test_5d_complement_derived_set_identity(corpus16):
    wrong = []
    count = 0
    for inst, t, re, rf in _pierce_parts(corpus16):
        count += 1
        if t.derived_set(rf) != (re.complement() & rf.complement()):
            wrong.append(inst.key)
    ok = count > 0 and not wrong
    report("5d", "derived(R(1-e)) = (R - Re) & (R - R(1-e))", ok,
           f"identity false on {len(wrong)} of {count} idempotent instances")
    assert ok, f"identity fails on {len(wrong)} of {count} instances, e.g. {wrong[:3]}"


def test_5e_trivial_idempotents_not_applicable(corpus16):
    bad = []
    for inst in corpus16.instances:
        r = inst.ring
        if inst.a in (r.zero, r.one):
            ctx = InstanceContext(inst)
            for claim in ("Thm-3.1", "Thm-3.2"):
                if evaluate(claim, ctx).verdict != NOT_APPLICABLE:
                    bad.append((claim, inst.key))
    report("5e", "e in {0, 1} recorded not-applicable", not bad)
    assert not bad


def test_6_worked_example():
    r = build_ring("ut:f2")
    e = r.element("[[1,1],[0,0]]")
    t = TopologySpace(r, e, ActionSide.LEFT)
    er = pierce_decompose(r, e, "left").left_part
    shape = all(r.label(x).endswith("],[0,0]]") for x in er)
    ok = r.order == 8 and r.is_idempotent(e) and len(er) == 4 and shape and t.is_open(er) and t.closure(er).is_full()
    report(6, "upper-triangular F2, e = [[1,1],[0,0]], left: eR has 4 elements, open, dense", ok,
           ", ".join(r.labels_of(er)))
    assert ok


def test_7_disconnectedness_boundary(corpus16):
    sierp = evaluate("Cor-2.15", InstanceContext(Instance(build_ring("zn:2"), 0, ActionSide.RIGHT)))
    sierp_ok = (sierp.verdict == FAILS and sierp.witness["reason"] == "no proper nonempty clopen exists"
                and sierp.witness["verified_by"] == "oracle")
    rep = audit_claim("Cor-2.15", corpus16)
    boundary_bad = []
    for v in rep.verdicts:
        t = v.instance.space()
        proper = any(0 < len(t.closure(t.orbit(x).members)) < t.n for x in range(t.n))
        if proper != (v.verdict == HOLDS):
            boundary_bad.append(v.instance.key)
    ok = sierp_ok and not boundary_bad
    report(7, "disconnectedness fails on (Z2, 0) and holds exactly where a proper orbit closure exists", ok,
           f"tally={rep.tally()}")
    assert ok


def test_8_fixed_point(corpus256):
    rep = audit_claim("Thm-2.16", corpus256)
    bad = []
    applicable = 0
    for inst in corpus256.instances:
        t = inst.space()
        if t.fixed_point_hypothesis_failure() is not None:
            continue
        applicable += 1
        for x0 in range(t.n):
            cl = t.closure(t.orbit(x0).members)
            if not any(t.step(y) == y for y in cl):
                bad.append((inst.key, x0))
    ok = not bad and rep.tally()[FAILS] == 0 and applicable == rep.tally()[HOLDS]
    report(8, "fixed point in every orbit closure wherever the hypothesis holds", ok,
           f"{applicable} instances satisfy the hypothesis")
    assert ok


def test_9_determinism(tmp_path, capsys):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        main(["audit", "--max-order", "16", "--seed", "7", "--out", str(path)])
        outs.append(path.read_bytes())
    capsys.readouterr()
    ok = outs[0] == outs[1] and json.loads(outs[0])["config"]["seed"] == 7
    report(9, "two audit runs produce byte-identical JSON", ok, f"{len(outs[0])} bytes")
    assert ok
