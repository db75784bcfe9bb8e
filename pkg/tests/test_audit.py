import json
import random

import pytest

from absorbtop import audit
from absorbtop.audit import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    AuditCorpus,
    Instance,
    InstanceContext,
    audit_claim,
    audit_claims,
    default_corpus,
    emit_report,
    evaluate,
    replay,
)
from absorbtop.errors import UnknownClaimError
from absorbtop.specs import build_ring
from absorbtop.topology import ActionSide


@pytest.fixture(scope="module")
def small_corpus():
    return default_corpus(max_order=8)


def instance(spec, a, side="right"):
    r = build_ring(spec)
    return Instance(r, r.element(a), ActionSide(side))


def verdict(claim, spec, a, side="right"):
    return evaluate(claim, InstanceContext(instance(spec, a, side)))


def test_corpus_contents():
    c = default_corpus(16)
    keys = {i.key for i in c.instances}
    assert ("zn:2", "right", 0) in keys
    ex = instance("ut:f2", "[[1,1],[0,0]]", "left")
    assert ex.key in keys
    assert ("ut:f3", "right", 1) not in keys
    assert c.provenance["seed"] == 7


def test_corpus_is_deterministic():
    a, b = default_corpus(16), default_corpus(16)
    assert [i.key for i in a.instances] == [i.key for i in b.instances]
    c = default_corpus(16, seed=8)
    assert len(c) == len(a)


def test_corpus_extends_past_oracle_cap():
    c = default_corpus(256)
    assert {"ut:f3", "m2:f3", "prod:zn:16,zn:16"} <= set(c.provenance["generators"])
    with pytest.raises(ValueError):
        default_corpus(1)


def test_lemma_holds_everywhere(small_corpus):
    rep = audit_claim("Lemma-2.13", small_corpus)
    assert rep.tally()[HOLDS] == len(small_corpus)


def test_disconnected_fails_on_sierpinski():
    v = verdict("Cor-2.15", "zn:2", 0)
    assert v.verdict == FAILS
    assert v.witness == {"reason": "no proper nonempty clopen exists", "verified_by": "oracle", "components": 1}
    assert verdict("Cor-2.15", "zn:6", 3).verdict == HOLDS


def test_re_open_dense_on_z6():
    v = verdict("Thm-3.1", "zn:6", 3)
    assert v.verdict == HOLDS and v.detail == {"Re": ["0", "3"]}
    assert verdict("Thm-3.1", "zn:6", 2).verdict == NOT_APPLICABLE
    assert verdict("Thm-3.1", "zn:6", 1).guard == "e is trivial (e in {0, 1})"


def test_complement_claim_records_actual_derived_set():
    v = verdict("Thm-3.2", "zn:6", 3)
    assert v.verdict == FAILS
    assert v.witness["R(1-e)"] == ["0", "2", "4"]
    assert v.witness["derived_set"] == ["2", "4"]
    assert v.witness["claimed_derived_set"] == ["1", "5"]
    assert "R(1-e) is open" not in v.witness["failed"]
    assert v.guard == "e nontrivial"


def test_worked_example_instance():
    v = verdict("Ex-3.3", "ut:f2", "[[1,1],[0,0]]", "left")
    assert v.verdict == HOLDS
    assert v.detail["eR"] == ["[[0,0],[0,0]]", "[[0,1],[0,0]]", "[[1,0],[0,0]]", "[[1,1],[0,0]]"]
    assert verdict("Ex-3.3", "ut:f2", "[[1,1],[0,0]]", "right").verdict == NOT_APPLICABLE


def test_unknown_claim():
    with pytest.raises(UnknownClaimError):
        audit.get_claim("Thm-9.9")
    with pytest.raises(UnknownClaimError):
        audit_claims(default_corpus(4), ["Lemma-2.13", "nope"])


def test_empty_report_is_valid():
    doc = json.loads(emit_report([]))
    assert doc == {"schema": audit.REPORT_SCHEMA, "config": {}, "summary": {}, "records": []}
    assert emit_report([], "markdown").startswith("# Claim audit")
    with pytest.raises(ValueError):
        emit_report([], "xml")


def test_json_schema_round_trip(small_corpus):
    reports = audit_claims(small_corpus)
    text = emit_report(reports, config={"max_order": 8})
    doc = json.loads(text)
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == text
    assert list(doc["summary"]) == sorted(audit.CLAIM_ORDER)
    allowed = {"claim", "instance", "verdict", "witness", "guard", "detail"}
    ranks = []
    for rec in doc["records"]:
        assert set(rec) <= allowed and set(rec["instance"]) == {"ring", "a", "side"}
        assert (rec["verdict"] == FAILS) == ("witness" in rec)
        ranks.append({FAILS: 0, HOLDS: 1, NOT_APPLICABLE: 2}[rec["verdict"]])
    assert ranks == sorted(ranks)
    assert len(doc["records"]) == len(small_corpus) * len(audit.CLAIM_ORDER)


def test_markdown_rows(small_corpus):
    reports = audit_claims(small_corpus, ["Lemma-2.13", "Cor-2.15"])
    md = emit_report(reports, "markdown")
    rows = [line for line in md.splitlines() if line.startswith("| ") and not line.startswith("| claim")]
    families = {f"{i.family}/{i.side.value}" for i in small_corpus.instances}
    assert len(rows) == 2 * len(families)
    assert "| Cor-2.15 | zn/right |" in md and "`zn:2` a=`0`" in md


def test_order_independence(small_corpus):
    shuffled = list(small_corpus.instances)
    random.Random(1).shuffle(shuffled)
    other = AuditCorpus(shuffled, small_corpus.provenance)
    assert emit_report(audit_claims(small_corpus)) == emit_report(audit_claims(other))


def test_failures_replay_exactly(small_corpus):
    reports = audit_claims(small_corpus)
    failures = [v for rep in reports for v in rep.failures()]
    assert failures
    for v in failures:
        ref = v.instance.ref()
        again = replay(v.claim, ref["ring"], ref["a"], ref["side"], small_corpus.seed)
        assert again.to_dict() == v.to_dict()


def test_random_covers_depend_only_on_seed_and_instance():
    a = verdict("Thm-2.12", "zn:5", 1)
    b = verdict("Thm-2.12", "zn:5", 1)
    assert a.verdict == HOLDS and a.detail == b.detail
    assert a.detail["covers_checked"] == audit.RANDOM_COVERS + 1
