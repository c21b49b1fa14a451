"""The rule engine: per-system constraint tables, local rule checking,
the global eigen-token discipline, and structural-bridge synthesis.

Sequents are ordered lists and every rule is anchored at a list edge:
left rules consume the last antecedent formula, right rules produce the
first succedent formula, and explicit exchange steps recover any other
arrangement.  Rule parameters are stored on the node and validated, never
inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import BridgeError, TwoseqError
from .positions import (LtlPos, PastPos, Position, SeqPos, SetPos, Token,
                        concat, initials, ltl_add, ltl_step, ltl_token,
                        past_add, past_sub, related, seqpos)
from .syntax import (And, Box, Dia, Formula, Hist, Imp, Next, Not, Once, Or,
                     PFormula, Prev, Sequent, has_past, has_temporal, pf,
                     seq, tokens_of)


class SystemId(Enum):
    K = "K"
    D = "D"
    T = "T"
    K4 = "K4"
    S4 = "S4"
    S42 = "S42"
    LTL = "LTL"
    LTL_INDAX = "LTL_IndAx"
    LTLP = "LTLP"

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        key = text.strip().upper().replace(".", "").replace("-", "_")
        aliases = {
            "K": cls.K, "D": cls.D, "T": cls.T, "K4": cls.K4, "S4": cls.S4,
            "S42": cls.S42, "LTL": cls.LTL,
            "LTL_INDAX": cls.LTL_INDAX, "LTLI": cls.LTL_INDAX,
            "LTLP": cls.LTLP, "LTL_P": cls.LTLP,
        }
        if key not in aliases:
            raise TwoseqError(f"unknown system: {text!r}")
        return aliases[key]


CORE_SYSTEMS = (SystemId.K, SystemId.D, SystemId.T, SystemId.K4, SystemId.S4)


@dataclass(frozen=True)
class ConstraintTable:
    """One row of the per-system constraint table."""

    family: type
    box_left_shape: str        # any | empty-or-singleton | singleton | nonempty
    context_demand: bool       # boxL/diaR need a context formula below the step
    cut_guard: bool            # cut position must be an initial of a context
    allow_next: bool
    allow_past: bool
    induction: str             # none | rule | axiom


TABLE: dict[SystemId, ConstraintTable] = {
    SystemId.K: ConstraintTable(SeqPos, "singleton", True, True, False, False, "none"),
    SystemId.D: ConstraintTable(SeqPos, "singleton", False, False, False, False, "none"),
    SystemId.T: ConstraintTable(SeqPos, "empty-or-singleton", False, False, False, False, "none"),
    SystemId.K4: ConstraintTable(SeqPos, "nonempty", True, True, False, False, "none"),
    SystemId.S4: ConstraintTable(SeqPos, "any", False, False, False, False, "none"),
    SystemId.S42: ConstraintTable(SetPos, "any", False, False, False, False, "none"),
    SystemId.LTL: ConstraintTable(LtlPos, "any", False, False, True, False, "rule"),
    SystemId.LTL_INDAX: ConstraintTable(LtlPos, "any", False, False, True, False, "axiom"),
    SystemId.LTLP: ConstraintTable(PastPos, "any", False, False, True, True, "rule"),
}

STRUCTURAL_RULES = ("weakL", "weakR", "contrL", "contrR", "excL", "excR")
LEFT_LOGICAL = ("negL", "andL1", "andL2", "orL", "impL", "boxL", "diaL",
                "nextL", "prevL", "histL", "onceL")
RIGHT_LOGICAL = ("negR", "andR", "orR1", "orR2", "impR", "boxR", "diaR",
                 "nextR", "prevR", "histR", "onceR")
EIGEN_RULES = ("boxR", "diaL", "histR", "onceL", "ind", "pind")

_COMMON = ("ax", "cut") + STRUCTURAL_RULES + (
    "negL", "negR", "andL1", "andL2", "andR", "orL", "orR1", "orR2",
    "impL", "impR", "boxL", "boxR", "diaL", "diaR")

RULES_BY_SYSTEM: dict[SystemId, tuple[str, ...]] = {
    SystemId.K: _COMMON, SystemId.D: _COMMON, SystemId.T: _COMMON,
    SystemId.K4: _COMMON, SystemId.S4: _COMMON, SystemId.S42: _COMMON,
    SystemId.LTL: _COMMON + ("nextL", "nextR", "ind"),
    SystemId.LTL_INDAX: _COMMON + ("nextL", "nextR", "indax"),
    SystemId.LTLP: _COMMON + ("nextL", "nextR", "prevL", "prevR",
                              "histL", "histR", "onceL", "onceR",
                              "ind", "pind"),
}

_ARITY = {"ax": 0, "indax": 0, "cut": 2, "andR": 2, "orL": 2, "impL": 2}


@dataclass(frozen=True)
class ProofNode:
    """A rule instance: identifier, explicit parameters, conclusion, premises."""

    rule: str
    params: tuple[tuple[str, object], ...]
    conclusion: Sequent
    premises: tuple["ProofNode", ...] = ()

    def param(self, key: str, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    rule: str
    condition: str
    message: str


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    failures: tuple[Violation, ...]

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failures": [
                {"path": list(v.path), "rule": v.rule,
                 "condition": v.condition, "message": v.message}
                for v in self.failures
            ],
        }

    def render_text(self) -> str:
        if self.accepted:
            return "accepted"
        lines = [f"rejected: {len(self.failures)} failure(s)"]
        for v in self.failures:
            where = "/".join(map(str, v.path)) or "root"
            lines.append(f"  at {where} [{v.rule}] {v.condition}: {v.message}")
        return "\n".join(lines)


def report(failures: Iterable[Violation]) -> CheckReport:
    fs = tuple(failures)
    return CheckReport("accepted" if not fs else "rejected", fs)


# --- script trees (textual proofs may contain double-line bridge nodes) ---

@dataclass(frozen=True)
class ScriptNode:
    rule: str                       # a rule name or "bridge"
    params: tuple[tuple[str, object], ...]
    conclusion: Sequent
    children: tuple["ScriptNode", ...] = ()


@dataclass(frozen=True)
class ProofScript:
    system: SystemId
    root: ScriptNode


def node(rule: str, params: dict, conclusion: Sequent,
         premises: Iterable[ProofNode] = ()) -> ProofNode:
    items = tuple(sorted(params.items()))
    return ProofNode(rule, items, conclusion, tuple(premises))


def height(p: ProofNode) -> int:
    best: dict[int, int] = {}
    stack = [(p, False)]
    while stack:
        n, done = stack.pop()
        if done:
            best[id(n)] = 1 + max((best[id(c)] for c in n.premises), default=0)
        else:
            stack.append((n, True))
            stack.extend((c, False) for c in n.premises)
    return best[id(p)]


def iter_nodes(p: ProofNode):
    """Yield (path, node) pairs over the whole tree."""
    stack: list[tuple[tuple[int, ...], ProofNode]] = [((), p)]
    while stack:
        path, n = stack.pop()
        yield path, n
        for i, c in enumerate(n.premises):
            stack.append((path + (i,), c))


def proof_tokens(p: ProofNode) -> frozenset[Token]:
    out: set[Token] = set()
    for _, n in iter_nodes(p):
        out |= tokens_of(n.conclusion)
        for _, v in n.params:
            if isinstance(v, (SeqPos, SetPos, LtlPos, PastPos)):
                out |= v.tokens()
            elif isinstance(v, PFormula):
                out |= v.pos.tokens()
            elif n.rule in EIGEN_RULES and isinstance(v, str):
                out.add(v)
    return frozenset(out)


def eigen_token(n: ProofNode) -> Optional[Token]:
    if n.rule in EIGEN_RULES:
        return n.param("x")
    return None


# --- position plumbing shared by the rule schemas ---

def combine_add(alpha: Position, step) -> Position:
    """The position the premise of a forward box/dia step lives at."""
    if isinstance(alpha, SeqPos):
        return concat(alpha, step)
    if isinstance(alpha, SetPos):
        return SetPos(alpha.items | step.items)
    if isinstance(alpha, LtlPos):
        return ltl_add(alpha, step)
    if isinstance(alpha, PastPos):
        return past_add(alpha, step.steps, step.future)
    raise TwoseqError(f"bad position family: {alpha!r}")


def combine_sub(alpha: PastPos, step: LtlPos) -> PastPos:
    return past_sub(alpha, step.steps, step.future)


def token_step(x: Token, family: type):
    if family is SeqPos:
        return seqpos(x)
    if family is SetPos:
        return SetPos(frozenset((x,)))
    return ltl_token(x)         # LtlPos and PastPos increments


def _shape_ok(shape: str, beta) -> bool:
    n = len(beta.items) if isinstance(beta, SeqPos) else len(beta.tokens())
    if shape == "any":
        return True
    if shape == "singleton":
        return n == 1
    if shape == "empty-or-singleton":
        return n <= 1
    return n >= 1               # nonempty


# --- forward constructors: build a node and compute its conclusion ---

def ax(p: PFormula) -> ProofNode:
    return node("ax", {}, seq((p,), (p,)))


def cut(p1: ProofNode, p2: ProofNode, cutf: PFormula) -> ProofNode:
    s1, s2 = p1.conclusion, p2.conclusion
    if not s1.suc or s1.suc[0] != cutf:
        raise TwoseqError("cut: first premise must expose the cut formula first on the right")
    if not s2.ant or s2.ant[-1] != cutf:
        raise TwoseqError("cut: second premise must expose the cut formula last on the left")
    concl = seq(s1.ant + s2.ant[:-1], s1.suc[1:] + s2.suc)
    return node("cut", {"cutf": cutf}, concl, (p1, p2))


def weak_left(p: ProofNode, extra: PFormula) -> ProofNode:
    s = p.conclusion
    return node("weakL", {"pf": extra}, seq(s.ant + (extra,), s.suc), (p,))


def weak_right(p: ProofNode, extra: PFormula) -> ProofNode:
    s = p.conclusion
    return node("weakR", {"pf": extra}, seq(s.ant, (extra,) + s.suc), (p,))


def contr_left(p: ProofNode) -> ProofNode:
    s = p.conclusion
    if len(s.ant) < 2 or s.ant[-1] != s.ant[-2]:
        raise TwoseqError("contrL: last two antecedent formulas must agree")
    return node("contrL", {}, seq(s.ant[:-1], s.suc), (p,))


def contr_right(p: ProofNode) -> ProofNode:
    s = p.conclusion
    if len(s.suc) < 2 or s.suc[0] != s.suc[1]:
        raise TwoseqError("contrR: first two succedent formulas must agree")
    return node("contrR", {}, seq(s.ant, s.suc[1:]), (p,))


def exc_left(p: ProofNode, at: int) -> ProofNode:
    s = p.conclusion
    if not (0 <= at < len(s.ant) - 1):
        raise TwoseqError("excL: index out of range")
    ant = list(s.ant)
    ant[at], ant[at + 1] = ant[at + 1], ant[at]
    return node("excL", {"at": at}, seq(tuple(ant), s.suc), (p,))


def exc_right(p: ProofNode, at: int) -> ProofNode:
    s = p.conclusion
    if not (0 <= at < len(s.suc) - 1):
        raise TwoseqError("excR: index out of range")
    suc = list(s.suc)
    suc[at], suc[at + 1] = suc[at + 1], suc[at]
    return node("excR", {"at": at}, seq(s.ant, tuple(suc)), (p,))


def neg_left(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    return node("negL", {}, seq(s.ant + (pf(Not(a.formula), a.pos),), s.suc[1:]), (p,))


def neg_right(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    return node("negR", {}, seq(s.ant[:-1], (pf(Not(a.formula), a.pos),) + s.suc), (p,))


def and_left1(p: ProofNode, other: Formula) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    new = pf(And(a.formula, other), a.pos)
    return node("andL1", {}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def and_left2(p: ProofNode, other: Formula) -> ProofNode:
    s = p.conclusion
    b = s.ant[-1]
    new = pf(And(other, b.formula), b.pos)
    return node("andL2", {}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def and_right(p1: ProofNode, p2: ProofNode) -> ProofNode:
    s1, s2 = p1.conclusion, p2.conclusion
    a, b = s1.suc[0], s2.suc[0]
    if a.pos != b.pos:
        raise TwoseqError("andR: operand positions differ")
    new = pf(And(a.formula, b.formula), a.pos)
    return node("andR", {}, seq(s1.ant + s2.ant, (new,) + s1.suc[1:] + s2.suc[1:]),
                (p1, p2))


def or_left(p1: ProofNode, p2: ProofNode) -> ProofNode:
    s1, s2 = p1.conclusion, p2.conclusion
    a, b = s1.ant[-1], s2.ant[-1]
    if a.pos != b.pos:
        raise TwoseqError("orL: operand positions differ")
    new = pf(Or(a.formula, b.formula), a.pos)
    return node("orL", {}, seq(s1.ant[:-1] + s2.ant[:-1] + (new,), s1.suc + s2.suc),
                (p1, p2))


def or_right1(p: ProofNode, other: Formula) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    new = pf(Or(a.formula, other), a.pos)
    return node("orR1", {}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def or_right2(p: ProofNode, other: Formula) -> ProofNode:
    s = p.conclusion
    b = s.suc[0]
    new = pf(Or(other, b.formula), b.pos)
    return node("orR2", {}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def imp_left(p1: ProofNode, p2: ProofNode) -> ProofNode:
    # p1 holds the conclusion-side operand, p2 the antecedent-side one
    s1, s2 = p1.conclusion, p2.conclusion
    b, a = s1.ant[-1], s2.suc[0]
    if a.pos != b.pos:
        raise TwoseqError("impL: operand positions differ")
    new = pf(Imp(a.formula, b.formula), a.pos)
    return node("impL", {}, seq(s1.ant[:-1] + s2.ant + (new,), s1.suc + s2.suc[1:]),
                (p1, p2))


def imp_right(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a, b = s.ant[-1], s.suc[0]
    if a.pos != b.pos:
        raise TwoseqError("impR: operand positions differ")
    new = pf(Imp(a.formula, b.formula), a.pos)
    return node("impR", {}, seq(s.ant[:-1], (new,) + s.suc[1:]), (p,))


def _strip_suffix(pos: SeqPos, beta: SeqPos) -> SeqPos:
    k = len(beta.items)
    if k and pos.items[len(pos.items) - k:] != beta.items:
        raise TwoseqError("position does not end with the declared step")
    return SeqPos(pos.items[:len(pos.items) - k]) if k else pos


def box_left(p: ProofNode, beta, alpha=None) -> ProofNode:
    """Modal/S42 box-left: the premise operand sits one declared step up."""
    s = p.conclusion
    a = s.ant[-1]
    if alpha is None:
        if isinstance(a.pos, SeqPos):
            alpha = _strip_suffix(a.pos, beta)
        else:
            raise TwoseqError("boxL over sets needs an explicit alpha")
    if combine_add(alpha, beta) != a.pos:
        raise TwoseqError("boxL: alpha and beta do not compose to the premise position")
    new = pf(Box(a.formula), alpha)
    return node("boxL", {"alpha": alpha, "beta": beta},
                seq(s.ant[:-1] + (new,), s.suc), (p,))


def box_right(p: ProofNode, x: Token) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    if isinstance(a.pos, SeqPos):
        if not a.pos.items or a.pos.items[-1] != x:
            raise TwoseqError("boxR: premise position does not end with the eigen token")
        alpha: Position = SeqPos(a.pos.items[:-1])
    elif isinstance(a.pos, SetPos):
        alpha = SetPos(a.pos.items - {x})
    elif isinstance(a.pos, LtlPos):
        alpha = LtlPos(a.pos.steps, a.pos.future - {x})
    else:
        alpha = past_sub(a.pos, 0, {x})
    if combine_add(alpha, token_step(x, type(a.pos))) != a.pos:
        raise TwoseqError("boxR: eigen step does not reproduce the premise position")
    new = pf(Box(a.formula), alpha)
    return node("boxR", {"alpha": alpha, "x": x},
                seq(s.ant, (new,) + s.suc[1:]), (p,))


def dia_left(p: ProofNode, x: Token) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    if isinstance(a.pos, SeqPos):
        if not a.pos.items or a.pos.items[-1] != x:
            raise TwoseqError("diaL: premise position does not end with the eigen token")
        alpha: Position = SeqPos(a.pos.items[:-1])
    elif isinstance(a.pos, SetPos):
        alpha = SetPos(a.pos.items - {x})
    elif isinstance(a.pos, LtlPos):
        alpha = LtlPos(a.pos.steps, a.pos.future - {x})
    else:
        alpha = past_sub(a.pos, 0, {x})
    if combine_add(alpha, token_step(x, type(a.pos))) != a.pos:
        raise TwoseqError("diaL: eigen step does not reproduce the premise position")
    new = pf(Dia(a.formula), alpha)
    return node("diaL", {"alpha": alpha, "x": x},
                seq(s.ant[:-1] + (new,), s.suc), (p,))


def dia_right(p: ProofNode, beta, alpha=None) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    if alpha is None:
        if isinstance(a.pos, SeqPos):
            alpha = _strip_suffix(a.pos, beta)
        else:
            raise TwoseqError("diaR over sets needs an explicit alpha")
    if combine_add(alpha, beta) != a.pos:
        raise TwoseqError("diaR: alpha and beta do not compose to the premise position")
    new = pf(Dia(a.formula), alpha)
    return node("diaR", {"alpha": alpha, "beta": beta},
                seq(s.ant, (new,) + s.suc[1:]), (p,))


def box_left_at(p: ProofNode, s_pos, t: LtlPos) -> ProofNode:
    """Temporal box-left with an explicit base position (the split is ambiguous)."""
    return box_left(p, t, alpha=s_pos) if isinstance(s_pos, SetPos) else _temporal_left(
        p, "boxL", Box, s_pos, t, forward=True)


def dia_right_at(p: ProofNode, s_pos, t: LtlPos) -> ProofNode:
    return dia_right(p, t, alpha=s_pos) if isinstance(s_pos, SetPos) else _temporal_right(
        p, "diaR", Dia, s_pos, t, forward=True)


def _temporal_left(p: ProofNode, rule: str, head, s_pos, t: LtlPos,
                   forward: bool) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    expect = combine_add(s_pos, t) if forward else combine_sub(s_pos, t)
    if expect != a.pos:
        raise TwoseqError(f"{rule}: base and step do not compose to the premise position")
    new = pf(head(a.formula), s_pos)
    return node(rule, {"alpha": s_pos, "t": t}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def _temporal_right(p: ProofNode, rule: str, head, s_pos, t: LtlPos,
                    forward: bool) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    expect = combine_add(s_pos, t) if forward else combine_sub(s_pos, t)
    if expect != a.pos:
        raise TwoseqError(f"{rule}: base and step do not compose to the premise position")
    new = pf(head(a.formula), s_pos)
    return node(rule, {"alpha": s_pos, "t": t}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def hist_left(p: ProofNode, s_pos: PastPos, t: LtlPos) -> ProofNode:
    return _temporal_left(p, "histL", Hist, s_pos, t, forward=False)


def once_right(p: ProofNode, s_pos: PastPos, t: LtlPos) -> ProofNode:
    return _temporal_right(p, "onceR", Once, s_pos, t, forward=False)


def hist_right(p: ProofNode, x: Token) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    alpha = past_add(a.pos, 0, {x})
    if combine_sub(alpha, ltl_token(x)) != a.pos:
        raise TwoseqError("histR: eigen step does not reproduce the premise position")
    new = pf(Hist(a.formula), alpha)
    return node("histR", {"alpha": alpha, "x": x}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def once_left(p: ProofNode, x: Token) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    alpha = past_add(a.pos, 0, {x})
    if combine_sub(alpha, ltl_token(x)) != a.pos:
        raise TwoseqError("onceL: eigen step does not reproduce the premise position")
    new = pf(Once(a.formula), alpha)
    return node("onceL", {"alpha": alpha, "x": x}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def next_left(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    if isinstance(a.pos, LtlPos):
        if a.pos.steps < 1:
            raise TwoseqError("nextL: premise position has no step to consume")
        base: Position = LtlPos(a.pos.steps - 1, a.pos.future)
    else:
        base = past_sub(a.pos, 1, ())
    new = pf(Next(a.formula), base)
    return node("nextL", {}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def next_right(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    if isinstance(a.pos, LtlPos):
        if a.pos.steps < 1:
            raise TwoseqError("nextR: premise position has no step to consume")
        base: Position = LtlPos(a.pos.steps - 1, a.pos.future)
    else:
        base = past_sub(a.pos, 1, ())
    new = pf(Next(a.formula), base)
    return node("nextR", {}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def prev_left(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.ant[-1]
    base = past_add(a.pos, 1, ())
    new = pf(Prev(a.formula), base)
    return node("prevL", {}, seq(s.ant[:-1] + (new,), s.suc), (p,))


def prev_right(p: ProofNode) -> ProofNode:
    s = p.conclusion
    a = s.suc[0]
    base = past_add(a.pos, 1, ())
    new = pf(Prev(a.formula), base)
    return node("prevR", {}, seq(s.ant, (new,) + s.suc[1:]), (p,))


def ind(p: ProofNode, x: Token, t: LtlPos) -> ProofNode:
    """Temporal induction: base position read off the premise eigen step."""
    s = p.conclusion
    a, b = s.ant[-1], s.suc[0]
    if a.formula != b.formula:
        raise TwoseqError("ind: premise formulas differ")
    if isinstance(a.pos, LtlPos):
        if x not in a.pos.future:
            raise TwoseqError("ind: eigen token absent from the premise position")
        base: Position = LtlPos(a.pos.steps, a.pos.future - {x})
        if ltl_add(base, ltl_token(x)) != a.pos or \
                ltl_add(a.pos, ltl_step(1)) != b.pos:
            raise TwoseqError("ind: premise positions are not s+x and s+x+1")
    else:
        base = past_sub(a.pos, 0, {x})
        if past_add(base, 0, {x}) != a.pos or past_add(a.pos, 1, ()) != b.pos:
            raise TwoseqError("ind: premise positions are not s+x and s+x+1")
    new_l = pf(a.formula, base)
    new_r = pf(a.formula, combine_add(base, t))
    return node("ind", {"alpha": base, "x": x, "t": t},
                seq(s.ant[:-1] + (new_l,), (new_r,) + s.suc[1:]), (p,))


def pind(p: ProofNode, x: Token, t: LtlPos) -> ProofNode:
    s = p.conclusion
    a, b = s.ant[-1], s.suc[0]
    if a.formula != b.formula:
        raise TwoseqError("pind: premise formulas differ")
    base = past_add(a.pos, 0, {x})
    if past_sub(base, 0, {x}) != a.pos or past_sub(a.pos, 1, ()) != b.pos:
        raise TwoseqError("pind: premise positions are not s-x and s-x-1")
    new_l = pf(a.formula, base)
    new_r = pf(a.formula, combine_sub(base, t))
    return node("pind", {"alpha": base, "x": x, "t": t},
                seq(s.ant[:-1] + (new_l,), (new_r,) + s.suc[1:]), (p,))


def indax(formula: Formula, s_pos: LtlPos) -> ProofNode:
    shape = Imp(And(formula, Box(Imp(formula, Next(formula)))), Box(formula))
    return node("indax", {}, seq((), (pf(shape, s_pos),)))


# --- local rule checking ---

def _positions_ctx(pfs: Iterable[PFormula]):
    return [q.pos for q in pfs]


def _eigen_violation(sys: SystemId, x: Token, base: Position,
                     ctx: list[PFormula]) -> Optional[str]:
    table = TABLE[sys]
    if table.family is SeqPos:
        eig = concat(base, seqpos(x))
        if eig in initials(_positions_ctx(ctx)):
            return f"eigenposition {eig} occurs among the context initials"
        return None
    if x in base.tokens():
        return f"eigen token {x} occurs in the base position"
    for q in ctx:
        if x in q.pos.tokens():
            return f"eigen token {x} occurs in a context position"
    return None


def _demand_violation(alpha, beta, ctx: list[PFormula]) -> Optional[str]:
    """K/K4 context demand: some context formula sits at or below alpha+beta."""
    ab = combine_add(alpha, beta)
    for q in ctx:
        if related(ab, q.pos, "prefix"):
            return None
    return f"no context formula has a position starting with {ab}"


def check_rule_instance(n: ProofNode, sys: SystemId) -> list[Violation]:
    """Local validity of one rule instance against the system's table row."""
    table = TABLE[sys]
    out: list[Violation] = []

    def bad(condition: str, message: str):
        out.append(Violation((), n.rule, condition, message))

    if n.rule == "bridge":
        bad("schema", "unexpanded double-line node")
        return out
    if n.rule not in RULES_BY_SYSTEM[sys]:
        bad("schema", f"rule {n.rule} is not part of this system")
        return out
    want = _ARITY.get(n.rule, 1)
    if len(n.premises) != want:
        bad("arity", f"expected {want} premise(s), found {len(n.premises)}")
        return out

    c = n.conclusion
    prems = [q.conclusion for q in n.premises]

    def expect(cond: bool, condition: str, message: str) -> bool:
        if not cond:
            bad(condition, message)
        return cond

    try:
        if n.rule == "ax":
            expect(len(c.ant) == 1 and len(c.suc) == 1 and c.ant[0] == c.suc[0],
                   "schema", "axiom must be of shape A at p |- A at p")

        elif n.rule == "cut":
            cutf = n.param("cutf")
            if not expect(isinstance(cutf, PFormula), "params", "missing cut formula"):
                return out
            p1, p2 = prems
            ok = expect(bool(p1.suc) and p1.suc[0] == cutf, "schema",
                        "cut formula must head the first premise's succedent")
            ok &= expect(bool(p2.ant) and p2.ant[-1] == cutf, "schema",
                         "cut formula must end the second premise's antecedent")
            if ok:
                expect(c == seq(p1.ant + p2.ant[:-1], p1.suc[1:] + p2.suc),
                       "schema", "conclusion does not splice the premise contexts")
            if ok and table.cut_guard:
                alpha = cutf.pos
                left = list(p1.ant) + [q for q in p1.suc[1:] if q != cutf]
                right = [q for q in p2.ant[:-1] if q != cutf] + list(p2.suc)
                linit = initials(_positions_ctx(left))
                rinit = initials(_positions_ctx(right))
                expect(alpha in linit or alpha in rinit, "cut-position",
                       f"cut position {alpha} is not an initial of either context")

        elif n.rule == "weakL":
            p1, = prems
            ok = expect(len(c.ant) == len(p1.ant) + 1 and c.ant[:-1] == p1.ant
                        and c.suc == p1.suc,
                        "schema", "weakening must append one antecedent formula")
            declared = n.param("pf")
            if ok and declared is not None:
                expect(declared == c.ant[-1], "params",
                       "declared formula differs from the weakened one")
        elif n.rule == "weakR":
            p1, = prems
            ok = expect(len(c.suc) == len(p1.suc) + 1 and c.suc[1:] == p1.suc
                        and c.ant == p1.ant,
                        "schema", "weakening must prepend one succedent formula")
            declared = n.param("pf")
            if ok and declared is not None:
                expect(declared == c.suc[0], "params",
                       "declared formula differs from the weakened one")
        elif n.rule == "contrL":
            p1, = prems
            expect(bool(c.ant) and p1.ant == c.ant + (c.ant[-1],)
                   and c.suc == p1.suc,
                   "schema", "contraction must merge the last two antecedent formulas")
        elif n.rule == "contrR":
            p1, = prems
            expect(bool(c.suc) and p1.suc == (c.suc[0],) + c.suc
                   and c.ant == p1.ant,
                   "schema", "contraction must merge the first two succedent formulas")
        elif n.rule == "excL":
            p1, = prems
            at = n.param("at")
            if expect(isinstance(at, int) and 0 <= at < len(p1.ant) - 1,
                      "params", "exchange index out of range"):
                ant = list(p1.ant)
                ant[at], ant[at + 1] = ant[at + 1], ant[at]
                expect(c == seq(tuple(ant), p1.suc), "schema",
                       "conclusion is not the declared adjacent swap")
        elif n.rule == "excR":
            p1, = prems
            at = n.param("at")
            if expect(isinstance(at, int) and 0 <= at < len(p1.suc) - 1,
                      "params", "exchange index out of range"):
                suc = list(p1.suc)
                suc[at], suc[at + 1] = suc[at + 1], suc[at]
                expect(c == seq(p1.ant, tuple(suc)), "schema",
                       "conclusion is not the declared adjacent swap")

        elif n.rule == "negL":
            p1, = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Not),
                        "schema", "principal formula must be a negation")
            if ok:
                a = c.ant[-1]
                expect(p1 == seq(c.ant[:-1], (pf(a.formula.sub, a.pos),) + c.suc),
                       "schema", "premise does not match the negation-left schema")
        elif n.rule == "negR":
            p1, = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Not),
                        "schema", "principal formula must be a negation")
            if ok:
                a = c.suc[0]
                expect(p1 == seq(c.ant + (pf(a.formula.sub, a.pos),), c.suc[1:]),
                       "schema", "premise does not match the negation-right schema")
        elif n.rule in ("andL1", "andL2"):
            p1, = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, And),
                        "schema", "principal formula must be a conjunction")
            if ok:
                a = c.ant[-1]
                side = a.formula.left if n.rule == "andL1" else a.formula.right
                expect(p1 == seq(c.ant[:-1] + (pf(side, a.pos),), c.suc),
                       "schema", "premise does not match the conjunction-left schema")
        elif n.rule == "andR":
            p1, p2 = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, And),
                        "schema", "principal formula must be a conjunction")
            if ok:
                a = c.suc[0]
                ok = expect(bool(p1.suc) and p1.suc[0] == pf(a.formula.left, a.pos)
                            and bool(p2.suc) and p2.suc[0] == pf(a.formula.right, a.pos),
                            "schema", "premises do not expose the two operands")
            if ok:
                expect(c == seq(p1.ant + p2.ant, (a,) + p1.suc[1:] + p2.suc[1:]),
                       "schema", "conclusion does not splice the premise contexts")
        elif n.rule in ("orR1", "orR2"):
            p1, = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Or),
                        "schema", "principal formula must be a disjunction")
            if ok:
                a = c.suc[0]
                side = a.formula.left if n.rule == "orR1" else a.formula.right
                expect(p1 == seq(c.ant, (pf(side, a.pos),) + c.suc[1:]),
                       "schema", "premise does not match the disjunction-right schema")
        elif n.rule == "orL":
            p1, p2 = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Or),
                        "schema", "principal formula must be a disjunction")
            if ok:
                a = c.ant[-1]
                ok = expect(bool(p1.ant) and p1.ant[-1] == pf(a.formula.left, a.pos)
                            and bool(p2.ant) and p2.ant[-1] == pf(a.formula.right, a.pos),
                            "schema", "premises do not expose the two operands")
            if ok:
                expect(c == seq(p1.ant[:-1] + p2.ant[:-1] + (a,), p1.suc + p2.suc),
                       "schema", "conclusion does not splice the premise contexts")
        elif n.rule == "impL":
            p1, p2 = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Imp),
                        "schema", "principal formula must be an implication")
            if ok:
                a = c.ant[-1]
                ok = expect(bool(p1.ant) and p1.ant[-1] == pf(a.formula.right, a.pos)
                            and bool(p2.suc) and p2.suc[0] == pf(a.formula.left, a.pos),
                            "schema", "premises do not expose the two operands")
            if ok:
                expect(c == seq(p1.ant[:-1] + p2.ant + (a,), p1.suc + p2.suc[1:]),
                       "schema", "conclusion does not splice the premise contexts")
        elif n.rule == "impR":
            p1, = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Imp),
                        "schema", "principal formula must be an implication")
            if ok:
                a = c.suc[0]
                expect(p1 == seq(c.ant + (pf(a.formula.left, a.pos),),
                                 (pf(a.formula.right, a.pos),) + c.suc[1:]),
                       "schema", "premise does not match the implication-right schema")

        elif n.rule == "boxL":
            p1, = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Box),
                        "schema", "principal formula must be boxed")
            if ok:
                a = c.ant[-1]
                step = n.param("t") if table.family in (LtlPos, PastPos) else n.param("beta")
                if not expect(step is not None, "params", "missing step parameter"):
                    return out
                up = pf(a.formula.sub, combine_add(a.pos, step))
                ok = expect(p1 == seq(c.ant[:-1] + (up,), c.suc), "schema",
                            "premise does not match the box-left schema")
                if ok and table.family is SeqPos:
                    expect(_shape_ok(table.box_left_shape, step), "beta-shape",
                           f"step {step} violates the '{table.box_left_shape}' shape")
                    if table.context_demand:
                        msg = _demand_violation(a.pos, step, list(c.ant[:-1]) + list(c.suc))
                        expect(msg is None, "context-demand", msg or "")
        elif n.rule == "diaR":
            p1, = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Dia),
                        "schema", "principal formula must be diamonded")
            if ok:
                a = c.suc[0]
                step = n.param("t") if table.family in (LtlPos, PastPos) else n.param("beta")
                if not expect(step is not None, "params", "missing step parameter"):
                    return out
                up = pf(a.formula.sub, combine_add(a.pos, step))
                ok = expect(p1 == seq(c.ant, (up,) + c.suc[1:]), "schema",
                            "premise does not match the dia-right schema")
                if ok and table.family is SeqPos:
                    expect(_shape_ok(table.box_left_shape, step), "beta-shape",
                           f"step {step} violates the '{table.box_left_shape}' shape")
                    if table.context_demand:
                        msg = _demand_violation(a.pos, step, list(c.ant) + list(c.suc[1:]))
                        expect(msg is None, "context-demand", msg or "")
        elif n.rule == "boxR":
            p1, = prems
            x = n.param("x")
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Box),
                        "schema", "principal formula must be boxed")
            ok &= expect(isinstance(x, str), "params", "missing eigen token")
            if ok:
                a = c.suc[0]
                up = pf(a.formula.sub, combine_add(a.pos, token_step(x, table.family)))
                ok = expect(p1 == seq(c.ant, (up,) + c.suc[1:]), "schema",
                            "premise does not match the box-right schema")
            if ok:
                msg = _eigen_violation(sys, x, a.pos, list(c.ant) + list(c.suc[1:]))
                expect(msg is None, "eigen-position", msg or "")
        elif n.rule == "diaL":
            p1, = prems
            x = n.param("x")
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Dia),
                        "schema", "principal formula must be diamonded")
            ok &= expect(isinstance(x, str), "params", "missing eigen token")
            if ok:
                a = c.ant[-1]
                up = pf(a.formula.sub, combine_add(a.pos, token_step(x, table.family)))
                ok = expect(p1 == seq(c.ant[:-1] + (up,), c.suc), "schema",
                            "premise does not match the dia-left schema")
            if ok:
                msg = _eigen_violation(sys, x, a.pos, list(c.ant[:-1]) + list(c.suc))
                expect(msg is None, "eigen-position", msg or "")

        elif n.rule in ("nextL", "nextR"):
            p1, = prems
            side = c.ant[-1] if n.rule == "nextL" and c.ant else (
                c.suc[0] if n.rule == "nextR" and c.suc else None)
            ok = expect(side is not None and isinstance(side.formula, Next),
                        "schema", "principal formula must be a next")
            if ok:
                a = side
                up_pos = (ltl_add(a.pos, ltl_step(1)) if isinstance(a.pos, LtlPos)
                          else past_add(a.pos, 1, ()))
                up = pf(a.formula.sub, up_pos)
                want_seq = (seq(c.ant[:-1] + (up,), c.suc) if n.rule == "nextL"
                            else seq(c.ant, (up,) + c.suc[1:]))
                expect(p1 == want_seq, "schema",
                       "premise does not match the next schema")
        elif n.rule in ("prevL", "prevR"):
            p1, = prems
            side = c.ant[-1] if n.rule == "prevL" and c.ant else (
                c.suc[0] if n.rule == "prevR" and c.suc else None)
            ok = expect(side is not None and isinstance(side.formula, Prev),
                        "schema", "principal formula must be a prev")
            if ok:
                a = side
                up = pf(a.formula.sub, past_sub(a.pos, 1, ()))
                want_seq = (seq(c.ant[:-1] + (up,), c.suc) if n.rule == "prevL"
                            else seq(c.ant, (up,) + c.suc[1:]))
                expect(p1 == want_seq, "schema",
                       "premise does not match the prev schema")
        elif n.rule == "histL":
            p1, = prems
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Hist),
                        "schema", "principal formula must be a past-box")
            t = n.param("t")
            ok &= expect(t is not None, "params", "missing step parameter")
            if ok:
                a = c.ant[-1]
                up = pf(a.formula.sub, combine_sub(a.pos, t))
                expect(p1 == seq(c.ant[:-1] + (up,), c.suc), "schema",
                       "premise does not match the past-box-left schema")
        elif n.rule == "onceR":
            p1, = prems
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Once),
                        "schema", "principal formula must be a past-dia")
            t = n.param("t")
            ok &= expect(t is not None, "params", "missing step parameter")
            if ok:
                a = c.suc[0]
                up = pf(a.formula.sub, combine_sub(a.pos, t))
                expect(p1 == seq(c.ant, (up,) + c.suc[1:]), "schema",
                       "premise does not match the past-dia-right schema")
        elif n.rule == "histR":
            p1, = prems
            x = n.param("x")
            ok = expect(bool(c.suc) and isinstance(c.suc[0].formula, Hist),
                        "schema", "principal formula must be a past-box")
            ok &= expect(isinstance(x, str), "params", "missing eigen token")
            if ok:
                a = c.suc[0]
                up = pf(a.formula.sub, combine_sub(a.pos, ltl_token(x)))
                ok = expect(p1 == seq(c.ant, (up,) + c.suc[1:]), "schema",
                            "premise does not match the past-box-right schema")
            if ok:
                msg = _eigen_violation(sys, x, a.pos, list(c.ant) + list(c.suc[1:]))
                expect(msg is None, "eigen-position", msg or "")
        elif n.rule == "onceL":
            p1, = prems
            x = n.param("x")
            ok = expect(bool(c.ant) and isinstance(c.ant[-1].formula, Once),
                        "schema", "principal formula must be a past-dia")
            ok &= expect(isinstance(x, str), "params", "missing eigen token")
            if ok:
                a = c.ant[-1]
                up = pf(a.formula.sub, combine_sub(a.pos, ltl_token(x)))
                ok = expect(p1 == seq(c.ant[:-1] + (up,), c.suc), "schema",
                            "premise does not match the past-dia-left schema")
            if ok:
                msg = _eigen_violation(sys, x, a.pos, list(c.ant[:-1]) + list(c.suc))
                expect(msg is None, "eigen-position", msg or "")

        elif n.rule == "ind":
            p1, = prems
            x, t = n.param("x"), n.param("t")
            ok = expect(isinstance(x, str) and t is not None, "params",
                        "induction needs an eigen token and a target step")
            ok &= expect(bool(c.ant) and bool(c.suc), "schema",
                         "induction conclusion needs principal formulas on both sides")
            if ok:
                a, b = c.ant[-1], c.suc[0]
                ok = expect(a.formula == b.formula, "schema",
                            "left and right principal formulas differ")
            if ok:
                s_pos = a.pos
                ok = expect(combine_add(s_pos, t) == b.pos, "schema",
                            "right principal is not at the declared target step")
            if ok:
                up_l = pf(a.formula, combine_add(s_pos, ltl_token(x)))
                up_r = pf(a.formula, combine_add(combine_add(s_pos, ltl_token(x)),
                                                 ltl_step(1)))
                ok = expect(p1 == seq(c.ant[:-1] + (up_l,), (up_r,) + c.suc[1:]),
                            "schema", "premise does not match the induction schema")
            if ok:
                msg = _eigen_violation(sys, x, s_pos, list(c.ant[:-1]) + list(c.suc[1:]))
                expect(msg is None, "eigen-position", msg or "")
        elif n.rule == "pind":
            p1, = prems
            x, t = n.param("x"), n.param("t")
            ok = expect(isinstance(x, str) and t is not None, "params",
                        "induction needs an eigen token and a target step")
            ok &= expect(bool(c.ant) and bool(c.suc), "schema",
                         "induction conclusion needs principal formulas on both sides")
            if ok:
                a, b = c.ant[-1], c.suc[0]
                ok = expect(a.formula == b.formula, "schema",
                            "left and right principal formulas differ")
            if ok:
                s_pos = a.pos
                ok = expect(combine_sub(s_pos, t) == b.pos, "schema",
                            "right principal is not at the declared target step")
            if ok:
                down = combine_sub(s_pos, ltl_token(x))
                up_l = pf(a.formula, down)
                up_r = pf(a.formula, combine_sub(down, ltl_step(1)))
                ok = expect(p1 == seq(c.ant[:-1] + (up_l,), (up_r,) + c.suc[1:]),
                            "schema", "premise does not match the past-induction schema")
            if ok:
                msg = _eigen_violation(sys, x, s_pos, list(c.ant[:-1]) + list(c.suc[1:]))
                expect(msg is None, "eigen-position", msg or "")
        elif n.rule == "indax":
            ok = expect(not c.ant and len(c.suc) == 1, "schema",
                        "induction axiom must conclude a single succedent formula")
            if ok:
                f = c.suc[0].formula
                good = (isinstance(f, Imp) and isinstance(f.left, And)
                        and isinstance(f.right, Box)
                        and isinstance(f.left.right, Box)
                        and isinstance(f.left.right.sub, Imp)
                        and isinstance(f.left.right.sub.right, Next)
                        and f.left.left == f.right.sub
                        and f.left.right.sub.left == f.left.left
                        and f.left.right.sub.right.sub == f.left.left)
                expect(good, "schema", "formula is not an induction-axiom instance")
        else:
            bad("schema", f"unknown rule {n.rule}")
    except TwoseqError as e:
        bad("schema", str(e))

    # declared base positions, when present, must agree with the conclusion
    alpha = n.param("alpha")
    if alpha is not None and not out:
        principal = None
        if n.rule in ("boxL", "diaL", "histL", "onceL", "ind", "pind"):
            principal = c.ant[-1] if c.ant else None
        elif n.rule in ("boxR", "diaR", "histR", "onceR"):
            principal = c.suc[0] if c.suc else None
        if n.rule in ("ind", "pind"):
            principal = c.ant[-1] if c.ant else None
        if principal is not None and principal.pos != alpha:
            out.append(Violation((), n.rule, "params",
                                 "declared base position differs from the conclusion"))
    return out


def _family_violations(n: ProofNode, sys: SystemId) -> list[Violation]:
    table = TABLE[sys]
    out = []
    for q in n.conclusion.pformulas():
        if not isinstance(q.pos, table.family):
            out.append(Violation((), n.rule, "family",
                                 f"position {q.pos} is not in the {table.family.__name__} family"))
            break
    for q in n.conclusion.pformulas():
        f = q.formula
        if not table.allow_next and has_temporal(f):
            out.append(Violation((), n.rule, "connective",
                                 "temporal connectives are not part of this system"))
            break
        if table.allow_next and not table.allow_past and has_past(f):
            out.append(Violation((), n.rule, "connective",
                                 "past connectives are not part of this system"))
            break
    return out


def check_proof(p: ProofNode, sys: SystemId) -> CheckReport:
    """Full proof check: every rule instance plus the global token condition.

    The token condition asks that each eigen token belong to exactly one
    rule and occur nowhere outside that rule's premise subtree.
    """
    failures: list[Violation] = []
    eigens: list[tuple[tuple[int, ...], Token]] = []

    for path, n in iter_nodes(p):
        for v in _family_violations(n, sys):
            failures.append(Violation(path, v.rule, v.condition, v.message))
        for v in check_rule_instance(n, sys):
            failures.append(Violation(path, v.rule, v.condition, v.message))
        x = eigen_token(n)
        if x is not None:
            eigens.append((path, x))

    seen: dict[Token, tuple[int, ...]] = {}
    for path, x in eigens:
        if x in seen:
            failures.append(Violation(path, "", "token-condition",
                                      f"token {x} is the eigen token of two rules"))
        seen[x] = path
    for path, x in eigens:
        for other_path, n in iter_nodes(p):
            inside = len(other_path) > len(path) and other_path[:len(path)] == path
            if inside:
                continue
            if x in tokens_of(n.conclusion):
                failures.append(Violation(
                    path, "", "token-condition",
                    f"eigen token {x} occurs outside its rule's premises (at "
                    f"{'/'.join(map(str, other_path)) or 'root'})"))
                break

    failures.sort(key=lambda v: v.path)
    return report(failures)


# --- structural bridges (the double-deduction-line convention) ---

def _count(xs, x) -> int:
    return sum(1 for y in xs if y == x)


class _BridgeBuilder:
    """Step-by-step application of structural rules onto a proof."""

    def __init__(self, proof: Optional[ProofNode], frm: Sequent):
        self.proof = proof
        self.ant = list(frm.ant)
        self.suc = list(frm.suc)
        self.steps: list[tuple[str, dict]] = []

    def _emit(self, rule: str, params: dict):
        self.steps.append((rule, params))
        if self.proof is None:
            return
        fn = {"weakL": weak_left, "weakR": weak_right,
              "contrL": lambda p: contr_left(p), "contrR": lambda p: contr_right(p),
              "excL": exc_left, "excR": exc_right}[rule]
        if rule in ("weakL", "weakR"):
            self.proof = fn(self.proof, params["pf"])
        elif rule in ("excL", "excR"):
            self.proof = fn(self.proof, params["at"])
        else:
            self.proof = fn(self.proof)

    def _swap(self, side: str, i: int):
        xs = self.ant if side == "L" else self.suc
        xs[i], xs[i + 1] = xs[i + 1], xs[i]
        self._emit("excL" if side == "L" else "excR", {"at": i})

    def _move(self, side: str, i: int, j: int):
        while i < j:
            self._swap(side, i)
            i += 1
        while i > j:
            self._swap(side, i - 1)
            i -= 1

    def run_side(self, side: str, target: list[PFormula]):
        xs = self.ant if side == "L" else self.suc
        for q in xs:
            if _count(target, q) == 0:
                raise BridgeError(q, "antecedent" if side == "L" else "succedent")
        # contract surplus occurrences
        for q in list(dict.fromkeys(xs)):
            while _count(xs, q) > max(_count(target, q), 1):
                idxs = [i for i, y in enumerate(xs) if y == q]
                if side == "L":
                    self._move(side, idxs[-1], len(xs) - 1)
                    idxs = [i for i, y in enumerate(xs) if y == q]
                    self._move(side, idxs[-2], len(xs) - 2)
                    self._emit("contrL", {})
                    xs.pop()
                else:
                    self._move(side, idxs[0], 0)
                    idxs = [i for i, y in enumerate(xs) if y == q]
                    self._move(side, idxs[1], 1)
                    self._emit("contrR", {})
                    xs.pop(0)
        # weaken in what is missing
        for q in list(dict.fromkeys(target)):
            while _count(xs, q) < _count(target, q):
                if side == "L":
                    xs.append(q)
                    self._emit("weakL", {"pf": q})
                else:
                    xs.insert(0, q)
                    self._emit("weakR", {"pf": q})
        # sort into the target order by adjacent swaps
        for k in range(len(target)):
            if xs[k] == target[k]:
                continue
            j = next(i for i in range(k + 1, len(xs)) if xs[i] == target[k])
            self._move(side, j, k)
        assert xs == target


def structural_bridge(frm: Sequent, to: Sequent) -> tuple[tuple[str, dict], ...]:
    """Plan an explicit weakening/contraction/exchange chain from one sequent
    to another; fails if a formula would have to be deleted."""
    b = _BridgeBuilder(None, frm)
    b.run_side("L", list(to.ant))
    b.run_side("R", list(to.suc))
    return tuple(b.steps)


def bridge_proof(p: ProofNode, to: Sequent) -> ProofNode:
    """Extend a proof by a structural chain up to the requested sequent."""
    if p.conclusion == to:
        return p
    b = _BridgeBuilder(p, p.conclusion)
    b.run_side("L", list(to.ant))
    b.run_side("R", list(to.suc))
    assert b.proof is not None and b.proof.conclusion == to
    return b.proof


def expand_double_lines(script: ProofScript) -> ProofNode:
    """Replace every double-line node of a script by a primitive chain."""

    def rec(sn: ScriptNode, path: tuple[int, ...]) -> ProofNode:
        if sn.rule == "bridge":
            if len(sn.children) != 1:
                raise TwoseqError("double-line node must have exactly one child")
            child = rec(sn.children[0], path + (0,))
            try:
                return bridge_proof(child, sn.conclusion)
            except BridgeError as e:
                where = "/".join(map(str, path)) or "root"
                raise BridgeError(e.missing, f"{e.side} (at {where})") from e
        return ProofNode(sn.rule, sn.params, sn.conclusion,
                         tuple(rec(c, path + (i,)) for i, c in enumerate(sn.children)))

    return rec(script.root, ())


def script_of_proof(p: ProofNode) -> ScriptNode:
    return ScriptNode(p.rule, p.params, p.conclusion,
                      tuple(script_of_proof(c) for c in p.premises))
