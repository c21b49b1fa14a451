"""Degree bookkeeping, the mix procedure, and cut elimination with
subformula verification, for the five sequence-position systems.

The mix of two proofs removes every occurrence of the cut formula from
the right side of the first and the left side of the second, recursing on
the lexicographic pair of heights; elimination then inducts on the pair
of proof degree and height.  Both measures are asserted at runtime.  For
the two restricted systems the mix carries a position hypothesis mirroring
their cut condition; it is asserted on every entry and a violation is
reported as an error, never patched over.
"""

from __future__ import annotations

from typing import Callable, Optional

from .calculus import (CORE_SYSTEMS, LEFT_LOGICAL, RIGHT_LOGICAL,
                       STRUCTURAL_RULES, ProofNode, Sequent, SystemId, TABLE,
                       and_left1, and_left2, and_right, ax, box_left,
                       box_right, bridge_proof, cut, dia_left, dia_right,
                       height, imp_left, imp_right, iter_nodes, neg_left,
                       neg_right, node, or_left, or_right1, or_right2,
                       proof_tokens, seq)
from .errors import (MixHypothesisError, TwoseqError, UnsupportedSystemError)
from .positions import SeqPos, initials
from .syntax import (And, Box, Dia, Imp, Not, Or, PFormula, degree,
                     is_subformula, pf)
from .transform import (FreshTokenSource, _scoped_rename,
                        substitute_positions)

Trace = Optional[Callable[[str], None]]


def proof_degree(p: ProofNode) -> int:
    """Zero for cut-free proofs, else one past the largest cut-formula degree."""
    best = 0
    for _, n in iter_nodes(p):
        if n.rule == "cut":
            best = max(best, degree(n.param("cutf").formula) + 1)
    return best


def is_cut_free(p: ProofNode) -> bool:
    return all(n.rule != "cut" for _, n in iter_nodes(p))


def verify_subformula_property(p: ProofNode) -> bool:
    """Every formula anywhere in the proof is a subformula of the conclusion."""
    ends = p.conclusion.pformulas()
    for _, n in iter_nodes(p):
        for q in n.conclusion.pformulas():
            if not any(is_subformula(q, e) for e in ends):
                return False
    return True


def _removed(xs: tuple[PFormula, ...], cutf: PFormula) -> tuple[PFormula, ...]:
    return tuple(q for q in xs if q != cutf)


def _mix_target(p1: ProofNode, p2: ProofNode, cutf: PFormula) -> Sequent:
    return seq(p1.conclusion.ant + _removed(p2.conclusion.ant, cutf),
               _removed(p1.conclusion.suc, cutf) + p2.conclusion.suc)


def _check_hypothesis(p1: ProofNode, p2: ProofNode, cutf: PFormula) -> None:
    alpha = cutf.pos
    left = [q.pos for q in p1.conclusion.ant] + \
           [q.pos for q in _removed(p1.conclusion.suc, cutf)]
    right = [q.pos for q in _removed(p2.conclusion.ant, cutf)] + \
            [q.pos for q in p2.conclusion.suc]
    if alpha in initials(left) or alpha in initials(right):
        return
    raise MixHypothesisError(
        f"mix position {alpha} is not an initial segment of either "
        f"cut-free context")


def _introduces_right(p: ProofNode, cutf: PFormula) -> bool:
    return (p.rule in RIGHT_LOGICAL and bool(p.conclusion.suc)
            and p.conclusion.suc[0] == cutf)


def _introduces_left(p: ProofNode, cutf: PFormula) -> bool:
    return (p.rule in LEFT_LOGICAL and bool(p.conclusion.ant)
            and p.conclusion.ant[-1] == cutf)


class _Mixer:
    def __init__(self, cutf: PFormula, sys: SystemId, src: FreshTokenSource,
                 trace: Trace):
        self.cutf = cutf
        self.sys = sys
        self.src = src
        self.trace = trace
        self.degree = degree(cutf.formula)

    def strip(self, xs) -> tuple[PFormula, ...]:
        return _removed(tuple(xs), self.cutf)

    def run(self, p1: ProofNode, p2: ProofNode,
            parent: Optional[tuple[int, int]]) -> ProofNode:
        measure = (height(p1), height(p2))
        if parent is not None:
            assert measure < parent, "mix height measure failed to decrease"
        want = _mix_target(p1, p2, self.cutf)
        # when one side carries no occurrence at all, nothing is removed
        # from it and the spliced sequent is reachable by weakening alone;
        # recursion below a two-premise rule can land here with the other
        # premise holding the only position witness, where the restricted
        # hypothesis is silent
        if self.cutf not in p2.conclusion.ant:
            if self.trace:
                self.trace("mix: no occurrences on the left of the right proof")
            return bridge_proof(p2, want)
        if self.cutf not in p1.conclusion.suc:
            if self.trace:
                self.trace("mix: no occurrences on the right of the left proof")
            return bridge_proof(p1, want)
        out = self._dispatch(p1, p2, measure)
        assert out.conclusion == want, "mix produced the wrong sequent"
        return out

    def sub(self, a: ProofNode, b: ProofNode,
            measure: tuple[int, int]) -> ProofNode:
        # fresh copies keep every eigen token unique across duplicated sides
        return self.run(_scoped_rename(a, self.src),
                        _scoped_rename(b, self.src), measure)

    def _dispatch(self, p1: ProofNode, p2: ProofNode, measure) -> ProofNode:
        cutf = self.cutf
        E = _mix_target(p1, p2, cutf)
        r, rp = p1.rule, p2.rule
        t = self.trace or (lambda s: None)

        if r == "ax":
            t("mix: left axiom")
            base = p2 if p1.conclusion.ant[0] == cutf else p1
            return bridge_proof(base, E)
        if rp == "ax":
            t("mix: right axiom")
            base = p1 if p2.conclusion.ant[0] == cutf else p2
            return bridge_proof(base, E)
        if r in STRUCTURAL_RULES:
            t(f"mix: left structural {r}")
            return bridge_proof(self.sub(p1.premises[0], p2, measure), E)
        if rp in STRUCTURAL_RULES:
            t(f"mix: right structural {rp}")
            return bridge_proof(self.sub(p1, p2.premises[0], measure), E)
        # from here on rules are rebuilt over removal-damaged contexts,
        # which is where the restricted systems' position hypothesis does
        # its work; the axiom and structural cases above never consume it
        if TABLE[self.sys].cut_guard:
            _check_hypothesis(p1, p2, cutf)
        if r == "cut" or not _introduces_right(p1, cutf):
            t(f"mix: left rule {r} does not introduce the cut formula")
            return self._case_left(p1, p2, E, measure)
        if rp == "cut" or not _introduces_left(p2, cutf):
            t(f"mix: right rule {rp} does not introduce the cut formula")
            return self._case_right(p1, p2, E, measure)
        t(f"mix: principal case on {type(cutf.formula).__name__}")
        return self._case_principal(p1, p2, E, measure)

    # -- the left rule is reapplied over the mixed premises --

    def _case_left(self, p1, p2, E, measure) -> ProofNode:
        cutf, strip = self.cutf, self.strip
        s2 = strip(p2.conclusion.ant)
        R2 = p2.conclusion.suc
        P = [c.conclusion for c in p1.premises]
        M = [self.sub(c, p2, measure) for c in p1.premises]
        C = p1.conclusion
        r = p1.rule

        def to(m, ant, suc):
            return bridge_proof(m, seq(tuple(ant), tuple(suc)))

        if r == "negL":
            a = C.ant[-1]
            sub = pf(a.formula.sub, a.pos)
            m = to(M[0], P[0].ant + s2, (sub,) + strip(P[0].suc[1:]) + R2)
            return bridge_proof(neg_left(m), E)
        if r == "negR":
            a = C.suc[0]
            sub = pf(a.formula.sub, a.pos)
            m = to(M[0], P[0].ant[:-1] + s2 + (sub,), strip(P[0].suc) + R2)
            return bridge_proof(neg_right(m), E)
        if r in ("andL1", "andL2"):
            a = C.ant[-1]
            comp = a.formula.left if r == "andL1" else a.formula.right
            other = a.formula.right if r == "andL1" else a.formula.left
            m = to(M[0], P[0].ant[:-1] + s2 + (pf(comp, a.pos),),
                   strip(P[0].suc) + R2)
            built = and_left1(m, other) if r == "andL1" else and_left2(m, other)
            return bridge_proof(built, E)
        if r == "andR":
            a = C.suc[0]
            m1 = to(M[0], P[0].ant + s2,
                    (pf(a.formula.left, a.pos),) + strip(P[0].suc[1:]) + R2)
            m2 = to(M[1], P[1].ant + s2,
                    (pf(a.formula.right, a.pos),) + strip(P[1].suc[1:]) + R2)
            return bridge_proof(and_right(m1, m2), E)
        if r == "orL":
            a = C.ant[-1]
            m1 = to(M[0], P[0].ant[:-1] + s2 + (pf(a.formula.left, a.pos),),
                    strip(P[0].suc) + R2)
            m2 = to(M[1], P[1].ant[:-1] + s2 + (pf(a.formula.right, a.pos),),
                    strip(P[1].suc) + R2)
            return bridge_proof(or_left(m1, m2), E)
        if r in ("orR1", "orR2"):
            a = C.suc[0]
            comp = a.formula.left if r == "orR1" else a.formula.right
            other = a.formula.right if r == "orR1" else a.formula.left
            m = to(M[0], P[0].ant + s2,
                   (pf(comp, a.pos),) + strip(P[0].suc[1:]) + R2)
            built = or_right1(m, other) if r == "orR1" else or_right2(m, other)
            return bridge_proof(built, E)
        if r == "impL":
            a = C.ant[-1]
            m1 = to(M[0], P[0].ant[:-1] + s2 + (pf(a.formula.right, a.pos),),
                    strip(P[0].suc) + R2)
            m2 = to(M[1], P[1].ant + s2,
                    (pf(a.formula.left, a.pos),) + strip(P[1].suc[1:]) + R2)
            return bridge_proof(imp_left(m1, m2), E)
        if r == "impR":
            a = C.suc[0]
            m = to(M[0], P[0].ant[:-1] + s2 + (pf(a.formula.left, a.pos),),
                   (pf(a.formula.right, a.pos),) + strip(P[0].suc[1:]) + R2)
            return bridge_proof(imp_right(m), E)
        if r == "boxL":
            a = C.ant[-1]
            beta = p1.param("beta")
            up = pf(a.formula.sub, p1.premises[0].conclusion.ant[-1].pos)
            m = to(M[0], P[0].ant[:-1] + s2 + (up,), strip(P[0].suc) + R2)
            return bridge_proof(box_left(m, beta, alpha=a.pos), E)
        if r == "diaR":
            a = C.suc[0]
            beta = p1.param("beta")
            up = pf(a.formula.sub, p1.premises[0].conclusion.suc[0].pos)
            m = to(M[0], P[0].ant + s2, (up,) + strip(P[0].suc[1:]) + R2)
            return bridge_proof(dia_right(m, beta, alpha=a.pos), E)
        if r == "boxR":
            a = C.suc[0]
            x = p1.param("x")
            up = pf(a.formula.sub, p1.premises[0].conclusion.suc[0].pos)
            m = to(M[0], P[0].ant + s2, (up,) + strip(P[0].suc[1:]) + R2)
            return bridge_proof(box_right(m, x), E)
        if r == "diaL":
            a = C.ant[-1]
            x = p1.param("x")
            up = pf(a.formula.sub, p1.premises[0].conclusion.ant[-1].pos)
            m = to(M[0], P[0].ant[:-1] + s2 + (up,), strip(P[0].suc) + R2)
            return bridge_proof(dia_left(m, x), E)
        if r == "cut":
            inner = p1.param("cutf")
            m1 = to(M[0], P[0].ant + s2, (inner,) + strip(P[0].suc[1:]) + R2)
            m2 = to(M[1], P[1].ant[:-1] + s2 + (inner,), strip(P[1].suc) + R2)
            return bridge_proof(cut(m1, m2, inner), E)
        raise TwoseqError(f"mix: unexpected left rule {r}")

    # -- the right rule is reapplied over the mixed premises --

    def _case_right(self, p1, p2, E, measure) -> ProofNode:
        cutf, strip = self.cutf, self.strip
        aL = p1.conclusion.ant
        s1 = strip(p1.conclusion.suc)
        P = [c.conclusion for c in p2.premises]
        M = [self.sub(p1, c, measure) for c in p2.premises]
        C = p2.conclusion
        r = p2.rule

        def to(m, ant, suc):
            return bridge_proof(m, seq(tuple(ant), tuple(suc)))

        if r == "negL":
            a = C.ant[-1]
            sub = pf(a.formula.sub, a.pos)
            m = to(M[0], aL + strip(P[0].ant), (sub,) + s1 + P[0].suc[1:])
            return bridge_proof(neg_left(m), E)
        if r == "negR":
            a = C.suc[0]
            sub = pf(a.formula.sub, a.pos)
            m = to(M[0], aL + strip(P[0].ant[:-1]) + (sub,), s1 + P[0].suc)
            return bridge_proof(neg_right(m), E)
        if r in ("andL1", "andL2"):
            a = C.ant[-1]
            comp = a.formula.left if r == "andL1" else a.formula.right
            other = a.formula.right if r == "andL1" else a.formula.left
            m = to(M[0], aL + strip(P[0].ant[:-1]) + (pf(comp, a.pos),),
                   s1 + P[0].suc)
            built = and_left1(m, other) if r == "andL1" else and_left2(m, other)
            return bridge_proof(built, E)
        if r == "andR":
            a = C.suc[0]
            m1 = to(M[0], aL + strip(P[0].ant),
                    (pf(a.formula.left, a.pos),) + s1 + P[0].suc[1:])
            m2 = to(M[1], aL + strip(P[1].ant),
                    (pf(a.formula.right, a.pos),) + s1 + P[1].suc[1:])
            return bridge_proof(and_right(m1, m2), E)
        if r == "orL":
            a = C.ant[-1]
            m1 = to(M[0], aL + strip(P[0].ant[:-1]) + (pf(a.formula.left, a.pos),),
                    s1 + P[0].suc)
            m2 = to(M[1], aL + strip(P[1].ant[:-1]) + (pf(a.formula.right, a.pos),),
                    s1 + P[1].suc)
            return bridge_proof(or_left(m1, m2), E)
        if r in ("orR1", "orR2"):
            a = C.suc[0]
            comp = a.formula.left if r == "orR1" else a.formula.right
            other = a.formula.right if r == "orR1" else a.formula.left
            m = to(M[0], aL + strip(P[0].ant),
                   (pf(comp, a.pos),) + s1 + P[0].suc[1:])
            built = or_right1(m, other) if r == "orR1" else or_right2(m, other)
            return bridge_proof(built, E)
        if r == "impL":
            a = C.ant[-1]
            m1 = to(M[0], aL + strip(P[0].ant[:-1]) + (pf(a.formula.right, a.pos),),
                    s1 + P[0].suc)
            m2 = to(M[1], aL + strip(P[1].ant),
                    (pf(a.formula.left, a.pos),) + s1 + P[1].suc[1:])
            return bridge_proof(imp_left(m1, m2), E)
        if r == "impR":
            a = C.suc[0]
            m = to(M[0], aL + strip(P[0].ant[:-1]) + (pf(a.formula.left, a.pos),),
                   (pf(a.formula.right, a.pos),) + s1 + P[0].suc[1:])
            return bridge_proof(imp_right(m), E)
        if r == "boxL":
            a = C.ant[-1]
            beta = p2.param("beta")
            up = pf(a.formula.sub, p2.premises[0].conclusion.ant[-1].pos)
            m = to(M[0], aL + strip(P[0].ant[:-1]) + (up,), s1 + P[0].suc)
            return bridge_proof(box_left(m, beta, alpha=a.pos), E)
        if r == "diaR":
            a = C.suc[0]
            beta = p2.param("beta")
            up = pf(a.formula.sub, p2.premises[0].conclusion.suc[0].pos)
            m = to(M[0], aL + strip(P[0].ant), (up,) + s1 + P[0].suc[1:])
            return bridge_proof(dia_right(m, beta, alpha=a.pos), E)
        if r == "boxR":
            a = C.suc[0]
            x = p2.param("x")
            up = pf(a.formula.sub, p2.premises[0].conclusion.suc[0].pos)
            m = to(M[0], aL + strip(P[0].ant), (up,) + s1 + P[0].suc[1:])
            return bridge_proof(box_right(m, x), E)
        if r == "diaL":
            a = C.ant[-1]
            x = p2.param("x")
            up = pf(a.formula.sub, p2.premises[0].conclusion.ant[-1].pos)
            m = to(M[0], aL + strip(P[0].ant[:-1]) + (up,), s1 + P[0].suc)
            return bridge_proof(dia_left(m, x), E)
        if r == "cut":
            inner = p2.param("cutf")
            m1 = to(M[0], aL + strip(P[0].ant), (inner,) + s1 + P[0].suc[1:])
            m2 = to(M[1], aL + strip(P[1].ant[:-1]) + (inner,), s1 + P[1].suc)
            return bridge_proof(cut(m1, m2, inner), E)
        raise TwoseqError(f"mix: unexpected right rule {r}")

    # -- both rules introduce the cut formula principally --

    def _case_principal(self, p1, p2, E, measure) -> ProofNode:
        cutf, strip = self.cutf, self.strip
        f, alpha = cutf.formula, cutf.pos

        def to(m, ant, suc):
            return bridge_proof(m, seq(tuple(ant), tuple(suc)))

        def ren(q):
            return _scoped_rename(q, self.src)

        if isinstance(f, Not):
            sub = pf(f.sub, alpha)
            g, d1 = p1.premises[0].conclusion.ant[:-1], p1.conclusion.suc[1:]
            gp, dp = p2.conclusion.ant[:-1], p2.conclusion.suc
            m1 = self.run(p1, ren(p2.premises[0]), measure)
            m2 = self.run(ren(p1.premises[0]), ren(p2), measure)
            left = g + strip(gp)
            m1 = to(m1, left, (sub,) + strip(d1) + dp)
            m2 = to(m2, left + (sub,), strip(d1) + dp)
            return bridge_proof(cut(m1, m2, sub), E)

        if isinstance(f, And):
            use_left = p2.rule == "andL1"
            comp = pf(f.left if use_left else f.right, alpha)
            pc = p1.premises[0] if use_left else p1.premises[1]
            m1 = self.run(pc, ren(p2), measure)
            m2 = self.run(ren(p1), ren(p2.premises[0]), measure)
            m1 = to(m1, pc.conclusion.ant + strip(p2.conclusion.ant[:-1]),
                    (comp,) + strip(pc.conclusion.suc[1:]) + p2.conclusion.suc)
            m2 = to(m2, p1.conclusion.ant + strip(p2.conclusion.ant[:-1]) + (comp,),
                    strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            return bridge_proof(cut(m1, m2, comp), E)

        if isinstance(f, Or):
            use_left = p1.rule == "orR1"
            comp = pf(f.left if use_left else f.right, alpha)
            pc = p2.premises[0] if use_left else p2.premises[1]
            m1 = self.run(ren(p1.premises[0]), ren(p2), measure)
            m2 = self.run(p1, ren(pc), measure)
            m1 = to(m1, p1.conclusion.ant + strip(p2.conclusion.ant[:-1]),
                    (comp,) + strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            m2 = to(m2, p1.conclusion.ant + strip(p2.conclusion.ant[:-1]) + (comp,),
                    strip(p1.conclusion.suc[1:]) + pc.conclusion.suc)
            return bridge_proof(cut(m1, m2, comp), E)

        if isinstance(f, Imp):
            a_pf, b_pf = pf(f.left, alpha), pf(f.right, alpha)
            pa, pb = p2.premises[1], p2.premises[0]   # |- A side, B |- side
            d1 = p1.conclusion.suc[1:]
            m1 = self.run(p1, ren(pa), measure)
            m3 = self.run(ren(p1.premises[0]), ren(p2), measure)
            m2 = self.run(ren(p1), ren(pb), measure)
            left1 = p1.conclusion.ant + strip(pa.conclusion.ant)
            m1 = to(m1, left1, (a_pf,) + strip(d1) + pa.conclusion.suc[1:])
            left3 = p1.conclusion.ant + strip(p2.conclusion.ant[:-1])
            m3 = to(m3, left3 + (a_pf,),
                    (b_pf,) + strip(d1) + p2.conclusion.suc)
            k1 = cut(m1, m3, a_pf)
            k1 = to(k1, k1.conclusion.ant,
                    (b_pf,) + tuple(q for q in k1.conclusion.suc if q != b_pf))
            left2 = p1.conclusion.ant + strip(pb.conclusion.ant[:-1])
            m2 = to(m2, left2 + (b_pf,), strip(d1) + pb.conclusion.suc)
            return bridge_proof(cut(k1, m2, b_pf), E)

        if isinstance(f, Box):
            x, beta = p1.param("x"), p2.param("beta")
            up = pf(f.sub, p2.premises[0].conclusion.ant[-1].pos)
            shifted = substitute_positions(
                p1.premises[0], SeqPos(alpha.items + (x,)),
                p2.premises[0].conclusion.ant[-1].pos)
            m1 = self.run(shifted, ren(p2), measure)
            m2 = self.run(ren(p1), ren(p2.premises[0]), measure)
            left = p1.conclusion.ant + strip(p2.conclusion.ant[:-1])
            m1 = to(m1, left, (up,) + strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            m2 = to(m2, left + (up,),
                    strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            return bridge_proof(cut(m1, m2, up), E)

        if isinstance(f, Dia):
            x, beta = p2.param("x"), p1.param("beta")
            up = pf(f.sub, p1.premises[0].conclusion.suc[0].pos)
            shifted = substitute_positions(
                p2.premises[0], SeqPos(alpha.items + (x,)),
                p1.premises[0].conclusion.suc[0].pos)
            m1 = self.run(p1.premises[0], ren(p2), measure)
            m2 = self.run(ren(p1), ren(shifted), measure)
            left = p1.conclusion.ant + strip(p2.conclusion.ant[:-1])
            m1 = to(m1, left, (up,) + strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            m2 = to(m2, left + (up,),
                    strip(p1.conclusion.suc[1:]) + p2.conclusion.suc)
            return bridge_proof(cut(m1, m2, up), E)

        raise TwoseqError("mix: principal case on an atomic cut formula")


def mix(p1: ProofNode, p2: ProofNode, cutf: PFormula, sys: SystemId,
        trace: Trace = None) -> ProofNode:
    """Effective simultaneous cut on every occurrence of the cut formula.

    Yields a proof of the spliced sequent with degree at most the cut
    formula's; both input degrees must already be within that bound.
    """
    if sys not in CORE_SYSTEMS:
        raise UnsupportedSystemError(
            f"mix is defined for the five core modal systems, not {sys.value}")
    n = degree(cutf.formula)
    if proof_degree(p1) > n or proof_degree(p2) > n:
        raise TwoseqError("mix: input proof degrees exceed the cut formula degree")
    src = FreshTokenSource(proof_tokens(p1) | proof_tokens(p2)
                           | cutf.pos.tokens())
    p1r, p2r = _scoped_rename(p1, src), _scoped_rename(p2, src)
    out = _Mixer(cutf, sys, src, trace).run(p1r, p2r, None)
    assert proof_degree(out) <= n, "mix exceeded its degree bound"
    return out


def eliminate_cuts(p: ProofNode, sys: SystemId, trace: Trace = None) -> ProofNode:
    """A cut-free proof of the same end sequent, for the five core systems.

    Other systems are refused: the temporal induction rule blocks the cut
    permutations this procedure relies on.
    """
    if sys not in CORE_SYSTEMS:
        extra = ""
        if sys in (SystemId.LTL, SystemId.LTL_INDAX, SystemId.LTLP):
            extra = ": cuts against the induction rule cannot be permuted away"
        raise UnsupportedSystemError(
            f"cut elimination unsupported for this system ({sys.value}){extra}")
    if is_cut_free(p):
        return p
    src = FreshTokenSource(proof_tokens(p))
    q = _scoped_rename(p, src)
    out = _eliminate(q, sys, src, trace, None)
    assert out.conclusion == p.conclusion, "elimination changed the end sequent"
    assert is_cut_free(out)
    if out.conclusion.is_empty():
        raise AssertionError("cut-free proof of the empty sequent; the kernel "
                             "is inconsistent")
    return out


def _eliminate(p: ProofNode, sys: SystemId, src: FreshTokenSource,
               trace: Trace, parent: Optional[tuple[int, int]]) -> ProofNode:
    my = (proof_degree(p), height(p))
    if parent is not None:
        assert my < parent, "elimination measure failed to decrease"
    if my[0] == 0:
        return p
    t = trace or (lambda s: None)
    if p.rule != "cut":
        prems = tuple(_eliminate(c, sys, src, trace, my) for c in p.premises)
        return node(p.rule, dict(p.params), p.conclusion, prems)

    cutf = p.param("cutf")
    p1, p2 = p.premises
    if TABLE[sys].cut_guard:
        if cutf in p1.conclusion.suc[1:]:
            t("eliminate: cut formula recurs on the right, bypassing mix")
            q1 = _eliminate(p1, sys, src, trace, my)
            return bridge_proof(q1, p.conclusion)
        if cutf in p2.conclusion.ant[:-1]:
            t("eliminate: cut formula recurs on the left, bypassing mix")
            q2 = _eliminate(p2, sys, src, trace, my)
            return bridge_proof(q2, p.conclusion)
    q1 = _eliminate(p1, sys, src, trace, my)
    q2 = _eliminate(p2, sys, src, trace, my)
    t(f"eliminate: mixing on {type(cutf.formula).__name__} at {cutf.pos}")
    mixer = _Mixer(cutf, sys, src, trace)
    mixed = mixer.run(q1, q2, None)
    # the mix dropped the degree below the eliminated cut's, so the pair
    # (degree, height) still decreases even though the height grew
    flat = _eliminate(mixed, sys, src, trace, my)
    return bridge_proof(flat, p.conclusion)
