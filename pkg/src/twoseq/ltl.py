"""Temporal layer: lasso-word semantics for the linear-time calculus and
the checking entry points for the temporal systems.

A lasso word is the finite stand-in for an arbitrary valuation of the
natural numbers: evaluation beyond the prefix is periodic, which makes
box and diamond decidable by inspecting one loop's worth of offsets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .calculus import CheckReport, ProofNode, SystemId, check_proof
from .errors import TwoseqError
from .positions import LtlPos, Token
from .syntax import (And, Box, Dia, Formula, Imp, Next, Not, Or, PAST,
                     PFormula, Prop, Sequent, sequent_atoms, tokens_of)


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic valuation: prefix letters then a repeated loop."""

    prefix: tuple[frozenset[str], ...]
    loop: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    def letter(self, m: int) -> frozenset[str]:
        if m < len(self.prefix):
            return self.prefix[m]
        return self.loop[(m - len(self.prefix)) % len(self.loop)]


TokenValuation = dict[Token, int]


def a_value(a: TokenValuation, s: LtlPos) -> int:
    """The time point a position denotes under a token valuation."""
    return s.steps + sum(a.get(x, 0) for x in s.future)


def eval_at(w: LassoWord, m: int, f: Formula) -> bool:
    """Satisfaction at time m.

    Box at m is decided by checking every offset up to one loop beyond
    max(m, prefix end): suffixes of the word repeat with the loop period
    from the prefix end on, so those offsets cover all later behaviour.
    """
    if isinstance(f, PAST):
        raise TwoseqError("the natural-number semantics has no past")
    if isinstance(f, Prop):
        return f.name in w.letter(m)
    if isinstance(f, Not):
        return not eval_at(w, m, f.sub)
    if isinstance(f, And):
        return eval_at(w, m, f.left) and eval_at(w, m, f.right)
    if isinstance(f, Or):
        return eval_at(w, m, f.left) or eval_at(w, m, f.right)
    if isinstance(f, Imp):
        return (not eval_at(w, m, f.left)) or eval_at(w, m, f.right)
    if isinstance(f, Next):
        return eval_at(w, m + 1, f.sub)
    hi = max(len(w.prefix), m) + len(w.loop) - 1
    if isinstance(f, Box):
        return all(eval_at(w, n, f.sub) for n in range(m, hi + 1))
    if isinstance(f, Dia):
        return any(eval_at(w, n, f.sub) for n in range(m, hi + 1))
    raise TwoseqError(f"unknown formula {f!r}")


def pformula_satisfied(w: LassoWord, a: TokenValuation, q: PFormula) -> bool:
    if not isinstance(q.pos, LtlPos):
        raise TwoseqError("lasso semantics needs step/token-set positions")
    return eval_at(w, a_value(a, q.pos), q.formula)


def sequent_satisfied(w: LassoWord, a: TokenValuation, s: Sequent) -> bool:
    if all(pformula_satisfied(w, a, q) for q in s.ant):
        return any(pformula_satisfied(w, a, q) for q in s.suc)
    return True


def check_ltl_proof(p: ProofNode, variant: str = "ind") -> CheckReport:
    """Check under the induction-rule or the induction-axiom formulation."""
    if variant not in ("ind", "indax"):
        raise TwoseqError("variant must be 'ind' or 'indax'")
    sys = SystemId.LTL if variant == "ind" else SystemId.LTL_INDAX
    return check_proof(p, sys)


def check_past_proof(p: ProofNode) -> CheckReport:
    return check_proof(p, SystemId.LTLP)


@dataclass
class LtlVerdict:
    ok: bool
    words_tried: int
    word: Optional[LassoWord] = None
    valuation: Optional[TokenValuation] = None

    @property
    def kind(self) -> str:
        return "valid-so-far" if self.ok else "counterexample"


def random_lasso(rng: random.Random, atoms: tuple[str, ...]) -> LassoWord:
    def letters(k: int) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(a for a in atoms if rng.random() < 0.5)
                     for _ in range(k))

    return LassoWord(letters(rng.randint(0, 4)), letters(rng.randint(1, 3)))


def ltl_soundness_fuzz(target, budget: int, seed: int,
                       bound: int = 4) -> LtlVerdict:
    """Random lassos and token valuations against a proof's end sequent
    (or a bare sequent)."""
    end_sequent = target if isinstance(target, Sequent) else target.conclusion
    rng = random.Random(seed)
    atoms = tuple(sorted(sequent_atoms(end_sequent))) or ("p0",)
    tokens = tuple(sorted(tokens_of(end_sequent)))
    for i in range(budget):
        w = random_lasso(rng, atoms)
        a = {x: rng.randint(0, bound) for x in tokens}
        if not sequent_satisfied(w, a, end_sequent):
            return LtlVerdict(False, i + 1, w, a)
    return LtlVerdict(True, budget)


def exhaustive_valuations(tokens: tuple[Token, ...], bound: int):
    """Every token valuation with values up to the bound."""
    if not tokens:
        yield {}
        return
    first, rest = tokens[0], tokens[1:]
    for a in exhaustive_valuations(rest, bound):
        for v in range(bound + 1):
            out = dict(a)
            out[first] = v
            yield out
