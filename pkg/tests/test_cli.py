"""Command-line driver: exit codes and the stable JSON schema."""

import json

import pytest

from twoseq.calculus import SystemId
from twoseq.cli import main
from twoseq.parser import parse_proof, render_proof
from twoseq.calculus import check_proof, expand_double_lines
import twoseq.corpus as corpus


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def proof_file(files, name, sysid, proof):
    return files(name, render_proof(sysid, proof))


def test_check_accept_and_reject(files, capsys):
    path = proof_file(files, "d.2sp", SystemId.D, corpus.axiom_d())
    assert main(["check", path]) == 0
    assert main(["check", "--system", "K", path]) == 1
    out = capsys.readouterr().out
    assert "diaR" in out


def test_check_json_schema(files, capsys):
    path = proof_file(files, "d.2sp", SystemId.D, corpus.axiom_d())
    assert main(["check", "--system", "K", "--json", path]) == 1
    data = json.loads(capsys.readouterr().out)
    assert set(data) == {"system", "verdict", "failures"}
    assert data["verdict"] == "rejected"
    f = data["failures"][0]
    assert set(f) == {"path", "rule", "condition", "message"}
    assert f["rule"] == "diaR" and f["condition"] == "context-demand"


def test_check_usage_error_on_missing_file(capsys):
    assert main(["check", "/nonexistent/path.2sp"]) == 2


def test_axioms_self_check(files, capsys):
    assert main(["axioms", "--system", "D"]) == 0
    out = capsys.readouterr().out
    assert out.count("accepted") == 4
    assert main(["axioms", "--system", "LTL", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["proofs"]) == 9
    assert all(p["verdict"] == "accepted" for p in data["proofs"])


def test_cutelim_pipeline(files, tmp_path, capsys):
    path = proof_file(files, "mp.2sp", SystemId.S4, corpus.mp_example(SystemId.S4))
    out_path = str(tmp_path / "out.2sp")
    assert main(["cutelim", path, "-o", out_path]) == 0
    script = parse_proof(open(out_path).read())
    proof = expand_double_lines(script)
    assert check_proof(proof, SystemId.S4).accepted
    assert main(["check", out_path]) == 0
    assert main(["subformula", out_path]) == 0


def test_cutelim_refuses_ltl(files, capsys):
    path = proof_file(files, "blocked.2sp", SystemId.LTL, corpus.ltl_blocked_cut())
    assert main(["cutelim", path]) == 2
    assert "unsupported" in capsys.readouterr().err


def test_subformula_needs_cut_free(files, capsys):
    path = proof_file(files, "cutty.2sp", SystemId.S4, corpus.diamond_taut_cut())
    assert main(["subformula", path]) == 2


def test_eval_graph_counterexample(files, capsys):
    model = files("m.2sm", "nodes: n0\nroot: n0\nval: n0 {}")
    sequent = files("s.2sq", "|- dia (p0 -> p0) @ []")
    assert main(["eval", "--model", model, "--sequent", sequent,
                 "--system", "K"]) == 1
    assert main(["eval", "--model", model, "--sequent", sequent,
                 "--system", "T"]) == 0


def test_eval_lasso(files, capsys):
    model = files("w.2sm", "prefix: {} ; loop: {p0}")
    sequent = files("s.2sq", "|- X p0 -> p0 @ (0;{})")
    assert main(["eval", "--model", model, "--sequent", sequent,
                 "--system", "LTL"]) == 1
    good = files("s2.2sq", "|- box p0 -> X p0 @ (0;{x})")
    assert main(["eval", "--model", model, "--sequent", good,
                 "--system", "LTL"]) == 0


def test_fuzz_modal_and_json(files, capsys):
    path = proof_file(files, "k.2sp", SystemId.K, corpus.axiom_k())
    assert main(["fuzz", "--budget", "40", "--seed", "3", "--json", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) == {"verdict", "models", "counterexample"}
    assert data["verdict"] == "valid-so-far" and data["models"] == 40


def test_fuzz_seed_env_override(files, monkeypatch, capsys):
    path = proof_file(files, "k.2sp", SystemId.K, corpus.axiom_k())
    monkeypatch.setenv("TWOSEQ_SEED", "9")
    assert main(["fuzz", "--budget", "10", path]) == 0


def test_fuzz_ltl(files, capsys):
    path = proof_file(files, "a6.2sp", SystemId.LTL, corpus.ltl_a6())
    assert main(["fuzz", "--budget", "80", "--seed", "1", path]) == 0


def test_transform_roundtrip(files, tmp_path, capsys):
    a8 = proof_file(files, "a8.2sp", SystemId.LTL, corpus.ltl_a8())
    out = str(tmp_path / "a8ax.2sp")
    assert main(["transform", "--op", "ind2ax", a8, "-o", out]) == 0
    assert main(["check", out]) == 0

    d = proof_file(files, "d.2sp", SystemId.D, corpus.axiom_d())
    lifted = str(tmp_path / "lifted.2sp")
    assert main(["transform", "--op", "lift", "--by", "[v]", d,
                 "-o", lifted]) == 0
    assert "[v]" in open(lifted).read()

    nec = str(tmp_path / "nec.2sp")
    assert main(["transform", "--op", "nec", d, "-o", nec]) == 0
    assert main(["check", nec]) == 0

    t1 = proof_file(files, "t1.2sp", SystemId.K, corpus.taut(corpus.P0))
    from twoseq.syntax import Imp
    t2 = proof_file(files, "t2.2sp", SystemId.K,
                    corpus.taut(Imp(corpus.P0, corpus.P0)))
    mp = str(tmp_path / "mp.2sp")
    assert main(["transform", "--op", "mp", t2, "--with", t1, "-o", mp]) == 0
    assert main(["check", mp]) == 0

    renamed = str(tmp_path / "renamed.2sp")
    assert main(["transform", "--op", "rename", d, "-o", renamed]) == 0


def test_transform_usage_errors(files, capsys):
    d = proof_file(files, "d.2sp", SystemId.D, corpus.axiom_d())
    assert main(["transform", "--op", "lift", d]) == 2
    assert main(["transform", "--op", "mp", d]) == 2


def test_check_variant_flag(files, capsys):
    a8 = proof_file(files, "a8.2sp", SystemId.LTL, corpus.ltl_a8())
    assert main(["check", "--variant", "ind", a8]) == 0
    assert main(["check", "--variant", "indax", a8]) == 1
    out = capsys.readouterr().out
    assert "LTL_IndAx" in out
    d = proof_file(files, "d.2sp", SystemId.D, corpus.axiom_d())
    assert main(["check", "--variant", "ind", d]) == 2


def test_axioms_emits_scripts(tmp_path, capsys):
    outdir = str(tmp_path / "emitted")
    assert main(["axioms", "--system", "K4", "-o", outdir]) == 0
    import os
    names = sorted(os.listdir(outdir))
    assert names == ["axiom-4.2sp", "axiom-K.2sp", "mp-example.2sp"]
    assert main(["check", str(tmp_path / "emitted" / "axiom-4.2sp")]) == 0


def test_fuzz_has_no_semantics_for_past(files, capsys):
    p = proof_file(files, "tense.2sp", SystemId.LTLP, corpus.tense_next_prev())
    assert main(["fuzz", "--budget", "5", p]) == 2


GOLDEN = __import__("pathlib").Path(__file__).parent / "golden"


def _run_capture(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_golden_json_outputs(files, capsys, tmp_path):
    """The JSON schema is frozen byte-for-byte against golden files."""
    axd = proof_file(files, "axiomD.2sp", SystemId.D, corpus.axiom_d())
    model = files("model.2sm", "nodes: n0\nroot: n0\nval: n0 {}")
    sq = files("seq.2sq", "|- dia (p0 -> p0) @ []")
    cases = {
        "check_reject.json": (1, ["check", "--system", "K", "--json", axd]),
        "check_accept.json": (0, ["check", "--json", axd]),
        "axioms_d.json": (0, ["axioms", "--system", "D", "--json"]),
        "eval_counterexample.json":
            (1, ["eval", "--model", model, "--sequent", sq,
                 "--system", "K", "--json"]),
        "fuzz_valid.json":
            (0, ["fuzz", "--budget", "20", "--seed", "3", "--json", axd]),
    }
    for name, (want_code, argv) in cases.items():
        code, out = _run_capture(argv, capsys)
        assert code == want_code, name
        assert out == (GOLDEN / name).read_text(), name
