"""Formula measures: degree, the subformula decision, token extraction."""

import pytest

from strategies import formula_st, seqpos_st
from hypothesis import given

from twoseq.errors import DegreeUndefinedError
from twoseq.positions import LtlPos, SeqPos, concat, seqpos
from twoseq.syntax import (And, Box, Dia, Imp, Next, Not, PFormula, Prop,
                           degree, is_subformula, pf, positions_of, seq,
                           tokens_of)

P, Q = Prop("p"), Prop("q")


def enumerate_sub(root: PFormula, pool: list[SeqPos]) -> set[PFormula]:
    """The subformula set restricted to a finite position pool (oracle)."""
    out = {root}
    f, alpha = root.formula, root.pos
    if isinstance(f, Not):
        out |= enumerate_sub(pf(f.sub, alpha), pool)
    elif isinstance(f, (And, Imp)):
        out |= enumerate_sub(pf(f.left, alpha), pool)
        out |= enumerate_sub(pf(f.right, alpha), pool)
    elif isinstance(f, (Box, Dia)):
        for beta in pool:
            out |= enumerate_sub(pf(f.sub, concat(alpha, beta)), pool)
    return out


def test_degree_examples():
    assert degree(P) == 0
    assert degree(Box(Imp(P, Q))) == 2
    assert degree(Not(Not(P))) == 2


def test_degree_rejects_temporal():
    with pytest.raises(DegreeUndefinedError):
        degree(Next(P))


def test_subformula_examples():
    x, xy, y = seqpos("x"), seqpos("x", "y"), seqpos("y")
    root = pf(Box(P), x)
    pool = [seqpos(), seqpos("y")]
    assert pf(P, xy) in enumerate_sub(root, pool)
    assert is_subformula(pf(P, xy), root)
    assert is_subformula(root, root)
    assert pf(P, y) not in enumerate_sub(root, pool + [seqpos("x")])
    assert not is_subformula(pf(P, y), root)


def test_subformula_nested_boxes():
    root = pf(Box(Dia(P)), seqpos())
    assert is_subformula(pf(Dia(P), seqpos("a", "b")), root)
    assert is_subformula(pf(P, seqpos("a", "b", "c")), root)
    assert not is_subformula(pf(Q, seqpos("a")), root)


def test_subformula_binary_keeps_position():
    root = pf(And(P, Box(Q)), seqpos("x"))
    assert is_subformula(pf(P, seqpos("x")), root)
    assert not is_subformula(pf(P, seqpos("x", "y")), root)
    assert is_subformula(pf(Q, seqpos("x", "y")), root)


@given(formula_st("modal", depth=2), seqpos_st)
def test_subformula_reflexive(f, pos):
    assert is_subformula(pf(f, pos), pf(f, pos))


def test_subformula_transitive_chain():
    outer = pf(Box(Box(P)), seqpos())
    mid = pf(Box(P), seqpos("x"))
    inner = pf(P, seqpos("x", "y"))
    assert is_subformula(mid, outer)
    assert is_subformula(inner, mid)
    assert is_subformula(inner, outer)


def test_tokens_and_positions_of():
    s = seq((), (pf(P, seqpos("x")),))
    assert tokens_of(s) == frozenset("x")
    assert tokens_of(seq((pf(P, seqpos()),), ())) == frozenset()
    s2 = seq((pf(P, LtlPos(1, frozenset("x"))),),
             (pf(Q, LtlPos(0, frozenset({"x", "y"}))),))
    assert tokens_of(s2) == frozenset({"x", "y"})
    assert positions_of(s2) == (LtlPos(1, frozenset("x")),
                                LtlPos(0, frozenset({"x", "y"})))
