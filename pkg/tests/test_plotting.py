from absorbtop.audit import audit_claims, default_corpus
from absorbtop.plotting import plot_audit_summary


def test_summary_figure(tmp_path):
    reports = audit_claims(default_corpus(4), ["Lemma-2.13", "Cor-2.15", "Thm-3.1"])
    out = plot_audit_summary(reports, tmp_path / "s.png")
    assert out.read_bytes()[:4] == b"\x89PNG"
    svg = plot_audit_summary(reports, tmp_path / "s.svg")
    text = svg.read_text()
    assert "Cor-2.15" in text or "<svg" in text


def test_summary_figure_empty(tmp_path):
    assert plot_audit_summary([], tmp_path / "e.png").exists()
