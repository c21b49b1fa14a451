"""Text front end: grammar instances, round trips, diagnostics."""

import pytest
from hypothesis import given, settings

from strategies import formula_st, pformula_st, sequent_st
from twoseq.calculus import SystemId, expand_double_lines
from twoseq.errors import ParseError
from twoseq.ltl import LassoWord
from twoseq.parser import (parse_formula, parse_model, parse_pformula,
                           parse_position, parse_proof, parse_sequent,
                           render_formula, render_model, render_pformula,
                           render_proof, render_sequent)
from twoseq.positions import LtlPos, PastPos, SeqPos, SetPos, seqpos
from twoseq.syntax import (And, Box, Dia, Imp, Next, Not, Prop, pf)
import twoseq.corpus as corpus


def test_formula_grammar_instances():
    assert parse_formula("box (p0 -> p1)") == Box(Imp(Prop("p0"), Prop("p1")))
    assert parse_pformula("box (p0 -> p1) @ []") == \
        pf(Box(Imp(Prop("p0"), Prop("p1"))), seqpos())
    s = parse_sequent("p0 @ [x] |- p0 @ [x]")
    assert s.ant == s.suc and len(s.ant) == 1


def test_precedence_and_associativity():
    assert parse_formula("~p0 & p1 | p2 -> q") == \
        Imp(parse_formula("(((~p0) & p1) | p2)"), Prop("q"))
    assert parse_formula("p0 -> p1 -> p2") == \
        Imp(Prop("p0"), Imp(Prop("p1"), Prop("p2")))
    assert parse_formula("box p0 & p1") == And(Box(Prop("p0")), Prop("p1"))
    assert parse_formula("dia dia p0") == Dia(Dia(Prop("p0")))
    assert parse_formula("X ~p0") == Next(Not(Prop("p0")))


def test_position_grammar():
    assert parse_position("[x,y]") == seqpos("x", "y")
    assert parse_position("[]") == seqpos()
    assert parse_position("{x,y}") == SetPos(frozenset({"x", "y"}))
    assert parse_position("(2;{x})") == LtlPos(2, frozenset("x"))
    assert parse_position("(-1;{x};{y})") == \
        PastPos(-1, frozenset("x"), frozenset("y"))


def test_empty_sequent_forms():
    assert parse_sequent("|-").is_empty()
    assert parse_sequent("|- p0 @ []").ant == ()
    assert parse_sequent("p0 @ [] |-").suc == ()


def test_diagnostics_have_locations_and_are_deterministic():
    bad = "p0 @@ [x] |- p0 @ [x]"
    with pytest.raises(ParseError) as e1:
        parse_sequent(bad)
    with pytest.raises(ParseError) as e2:
        parse_sequent(bad)
    assert str(e1.value) == str(e2.value)
    assert e1.value.line == 1 and e1.value.col >= 4


def test_unknown_rule_and_system_rejected():
    with pytest.raises(ParseError):
        parse_proof("(proof K (rule frobnicate (concl |- p0 @ [])))")
    with pytest.raises(ParseError):
        parse_proof("(proof K9 (rule ax (concl p0 @ [] |- p0 @ []))))")
    # temporal rules are not part of the modal systems
    with pytest.raises(ParseError):
        parse_proof("(proof K (rule ind (x x) (t (0;{})) (concl p0 @ [] |- p0 @ [])))")


def test_family_mismatch_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_proof("(proof K (rule ax (concl p0 @ (0;{}) |- p0 @ (0;{}))))")
    with pytest.raises(ParseError):
        parse_proof("(proof LTL (rule ax (concl p0 @ [x] |- p0 @ [x])))")


@given(formula_st("past"))
def test_formula_round_trip(f):
    assert parse_formula(render_formula(f)) == f


@given(pformula_st("modal", SeqPos))
def test_pformula_round_trip(q):
    assert parse_pformula(render_pformula(q)) == q


@settings(max_examples=60)
@given(sequent_st("modal", SeqPos))
def test_sequent_round_trip_modal(s):
    assert parse_sequent(render_sequent(s)) == s


@settings(max_examples=60)
@given(sequent_st("ltl", LtlPos))
def test_sequent_round_trip_ltl(s):
    assert parse_sequent(render_sequent(s)) == s


@settings(max_examples=60)
@given(sequent_st("past", PastPos))
def test_sequent_round_trip_past(s):
    assert parse_sequent(render_sequent(s)) == s


def test_every_corpus_proof_round_trips():
    for sysid in SystemId:
        for name, proof in corpus.entries(sysid):
            text = render_proof(sysid, proof)
            assert expand_double_lines(parse_proof(text)) == proof, (sysid, name)


def test_script_with_double_lines_expands():
    text = """
    (proof D
      (rule impR (concl |- box p0 -> dia p0 @ [])
        (rule diaR (alpha []) (beta [x]) (concl box p0 @ [] |- dia p0 @ [])
          (bridge (concl box p0 @ [] |- p0 @ [x])
            (rule boxL (alpha []) (beta [x]) (concl box p0 @ [] |- p0 @ [x])
              (rule ax (concl p0 @ [x] |- p0 @ [x])))))))
    """
    proof = expand_double_lines(parse_proof(text))
    assert proof == corpus.axiom_d()


def test_model_round_trips():
    g = parse_model("nodes: n0 n1\nroot: n0\nedges: n0->n1\nval: n0 {p0}\nval: n1 {}")
    assert parse_model(render_model(g)) == g
    lasso = parse_model("prefix: {p0} {} ; loop: {p1}")
    assert lasso == LassoWord((frozenset({"p0"}), frozenset()),
                              (frozenset({"p1"}),))
    assert parse_model(render_model(lasso)) == lasso
    empty_prefix = parse_model("prefix: ; loop: {p1} {p0,p1}")
    assert parse_model(render_model(empty_prefix)) == empty_prefix


def test_model_errors():
    with pytest.raises(ParseError):
        parse_model("")
    with pytest.raises(ParseError):
        parse_model("prefix: {p0} ; loop:")
    with pytest.raises(ParseError):
        parse_model("nodes: n0\nedges: n0->n9")
