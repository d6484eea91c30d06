"""Satisfiability engine: rule selection, application, and status flow.

A run grows the and-or graph from a root holding the whole ABox plus the
internalized TBox asserted of every named individual. Or-nodes are worked
off by static rules (conjunction/disjunction decomposition, subrole
narrowing, role-assertion propagation), then frozen into states, which the
transitional rule expands into one successor per existential obligation.

Inverse roles make a successor able to push constraints *back* onto the
state that spawned it. Two repair modes exist: while a state is being
expanded, required formulas collect in `fmls_rc` and the state reports
Incomplete (mode 0); once a state survived expansion cleanly, later
disjunctive descendants record alternative requirement sets instead
(mode 1). Either way the edge into the incomplete state is dropped and
the predecessor is re-expanded once by the converse rule with the repair
applied, now with `dformulas` pruning already-refuted alternatives.

Statuses flow upward: any satisfiable branch settles an or-node, any
refuted successor kills an and-node.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import syntax as sx
from .graph import (
    COMPLEX,
    DETERMINED,
    EXPANDED,
    INCOMPLETE,
    NONSTATE,
    SAT,
    SIMPLE,
    STATE,
    UNEXPANDED,
    UNSAT,
    TableauGraph,
)
from .rbox import RBoxIndex, kb_index
from .syntax import FormulaStore, KnowledgeBase, complement, ordered
from .transfer import (
    transfer_assertions,
    transfer_assertions_from,
    transfer_concepts,
    transfer_concepts_to,
)

EMPTY = frozenset()

R_AND = "and"
R_OR = "or"
R_HIER = "hier"
R_EXISTS = "exists"
R_AND_A = "and'"
R_OR_A = "or'"
R_HIER_A = "hier'"
R_UNIV_A = "univ'"
R_EXISTS_A = "exists'"
R_FORM = "form-state"
R_CONV = "converse"

PRIORITY = {
    R_AND: 5,
    R_AND_A: 5,
    R_HIER: 5,
    R_HIER_A: 5,
    R_UNIV_A: 5,
    R_OR: 4,
    R_OR_A: 4,
    R_FORM: 3,
    R_EXISTS: 2,
    R_EXISTS_A: 2,
    R_CONV: 1,
}


@dataclass(frozen=True)
class RuleInstance:
    tag: str
    principal: object = None
    principals: tuple = ()
    added: frozenset = EMPTY


@dataclass
class Verdict:
    sat: bool
    graph: TableauGraph
    stats: dict
    engine: "TableauEngine"


def t_unsat(store: FormulaStore, label) -> bool:
    """Obvious refutation: bottom, an individual in bottom, or a
    complementary pair."""
    for f in label:
        if f.kind == sx.BOT:
            return True
        if f.kind == sx.INST and f.concept.kind == sx.BOT:
            return True
        if f.kind != sx.REL and complement(store, f) in label:
            return True
    return False


def _is_existential(f, stype) -> bool:
    if stype == SIMPLE:
        return f.kind == sx.SOME
    return f.kind == sx.INST and f.concept.kind == sx.SOME


class TableauEngine:
    def __init__(self, kb: KnowledgeBase, idx: RBoxIndex | None = None, strategy: str = "dfs"):
        self.kb = kb
        self.store = kb.store
        self.idx = idx if idx is not None else kb_index(kb)
        self.graph = TableauGraph(strategy)
        self.tbox_set = frozenset(kb.tbox)
        self.rule_counts: Counter = Counter()
        self.trace: list = []

    # -- bookkeeping ---------------------------------------------------

    def _set_status(self, node, status) -> None:
        node.status = status
        if status == INCOMPLETE and node.node_type == STATE:
            self.trace.append(("status", node.id, status, node.conv_method, frozenset(node.fmls_rc)))
        else:
            self.trace.append(("status", node.id, status))

    def _before_forming_state(self, v) -> bool:
        return any(self.graph.node(w).node_type == STATE for w in self.graph.successors(v))

    def _t_sat(self, v) -> bool:
        return self.graph.node(v).status == UNEXPANDED and self.applicable_rule(v) is None

    # -- rule selection -------------------------------------------------

    def applicable_rule(self, v) -> RuleInstance | None:
        """Best applicable rule instance for `v`, or None when `v` is
        saturated. Choice is deterministic: highest priority first, then
        rule kind, then smallest principal in the fixed formula order,
        then smallest auxiliary role."""
        node = self.graph.node(v)
        store = self.store
        if node.node_type == STATE:
            ex = tuple(f for f in ordered(node.label) if _is_existential(f, node.stype))
            if not ex:
                return None
            tag = R_EXISTS if node.stype == SIMPLE else R_EXISTS_A
            return RuleInstance(tag, principals=ex)

        simple = node.stype == SIMPLE
        label = ordered(node.label)
        af = node.aformulas

        for f in label:
            is_conj = f.kind == sx.AND if simple else (f.kind == sx.INST and f.concept.kind == sx.AND)
            if is_conj and f not in node.rformulas:
                return RuleInstance(R_AND if simple else R_AND_A, principal=f)

        for f in label:
            if simple:
                target = f if f.kind == sx.ALL else None
            else:
                target = f.concept if f.kind == sx.INST and f.concept.kind == sx.ALL else None
            if target is None:
                continue
            for r in self.idx.subroles_of(target.role):
                narrowed = store.univ(r, target.child)
                added = narrowed if simple else store.inst(f.ind, narrowed)
                if added not in af:
                    return RuleInstance(R_HIER if simple else R_HIER_A, principal=f, added=frozenset({added}))

        if not simple:
            for f in label:
                if f.kind != sx.REL:
                    continue
                added = (
                    transfer_assertions(self.idx, store, node.label, f.a, f.role, f.b)
                    | transfer_assertions(self.idx, store, node.label, f.b, f.role.inverse, f.a)
                ) - af
                if added:
                    return RuleInstance(R_UNIV_A, principal=f, added=frozenset(added))

        for f in label:
            is_disj = f.kind == sx.OR if simple else (f.kind == sx.INST and f.concept.kind == sx.OR)
            if is_disj and f not in node.rformulas:
                return RuleInstance(R_OR if simple else R_OR_A, principal=f)

        if any(_is_existential(f, node.stype) for f in label):
            return RuleInstance(R_FORM)
        return None

    # -- rule application -------------------------------------------------

    def _static_conclusions(self, rule: RuleInstance, node) -> list:
        store = self.store
        f = rule.principal
        if rule.tag in (R_AND, R_AND_A):
            if rule.tag == R_AND:
                parts = {f.left, f.right}
            else:
                c = f.concept
                parts = {store.inst(f.ind, c.left), store.inst(f.ind, c.right)}
            return [(node.label - {f}) | parts]
        if rule.tag in (R_OR, R_OR_A):
            if rule.tag == R_OR:
                first, second = f.left, f.right
            else:
                first = store.inst(f.ind, f.concept.left)
                second = store.inst(f.ind, f.concept.right)
            base = node.label - {f}
            return [base | {first}, base | {second}]
        return [node.label | rule.added]

    def apply_rule(self, rule: RuleInstance, v) -> None:
        g = self.graph
        node = g.node(v)
        if rule.tag == R_CONV:
            assert node.status == EXPANDED and self._before_forming_state(v)
        else:
            assert node.status == UNEXPANDED
        node.expansions += 1
        node.rule = rule.tag
        self.rule_counts[rule.tag] += 1
        self.trace.append(("rule", rule.tag, v))

        if rule.tag == R_FORM:
            g.con_to_succ(v, STATE, node.stype, None, node.label, node.rformulas, node.dformulas)
        elif rule.tag == R_CONV:
            self.apply_conv_rule(v)
        elif rule.tag in (R_EXISTS, R_EXISTS_A):
            self.apply_trans_rule(rule, v)
            if node.status in DETERMINED:
                self.propagate_status(v)
                return
        else:
            if rule.tag in (R_HIER, R_HIER_A, R_UNIV_A):
                rfmls = node.rformulas
            else:
                rfmls = node.rformulas | {rule.principal}
            for x in self._static_conclusions(rule, node):
                g.con_to_succ(v, NONSTATE, node.stype, None, x, rfmls, node.dformulas)

        self._set_status(node, EXPANDED)

        for w in list(g.successors(v)):
            wn = g.node(w)
            if wn.status in DETERMINED:
                continue
            if t_unsat(self.store, wn.label):
                self._set_status(wn, UNSAT)
            elif wn.node_type == NONSTATE:
                if wn.state_pred is None:
                    continue
                v0 = g.node(wn.state_pred)
                v1 = g.node(wn.after_trans_pred)
                ce = v1.ce_label
                if v0.stype == SIMPLE:
                    x = transfer_concepts(self.idx, wn.label, ce.role.inverse) - v0.aformulas
                else:
                    x = (
                        transfer_concepts_to(self.idx, self.store, wn.label, ce.concept.role.inverse, ce.ind)
                        - v0.aformulas
                    )
                if x:
                    if v0.conv_method == 0:
                        v0.fmls_rc |= x
                        if x & v0.dformulas:
                            self._set_status(v0, UNSAT)
                            return
                    elif x & v0.dformulas:
                        self._set_status(wn, UNSAT)
                    else:
                        v1.alt_fml_sets_scp.add(frozenset(x))
                        self._set_status(wn, INCOMPLETE)
            elif self._t_sat(w):
                self._set_status(wn, SAT)

        self.update_status(v)
        if node.status in DETERMINED:
            self.propagate_status(v)

    def apply_trans_rule(self, rule: RuleInstance, u) -> None:
        """Expand a state: one fresh successor per existential obligation,
        then saturate the new local graph with the unary static rules."""
        g = self.graph
        un = g.node(u)
        assert un.node_type == STATE

        for f in rule.principals:
            if rule.tag == R_EXISTS:
                role = f.role
                label = frozenset({f.child}) | transfer_concepts(self.idx, un.label, role) | self.tbox_set
                g.new_succ(u, NONSTATE, SIMPLE, f, label, EMPTY, EMPTY)
                back = transfer_concepts(self.idx, label, role.inverse)
            else:
                some = f.concept
                role = some.role
                label = (
                    frozenset({some.child})
                    | transfer_assertions_from(self.idx, un.label, f.ind, role)
                    | self.tbox_set
                )
                g.new_succ(u, NONSTATE, SIMPLE, f, label, EMPTY, EMPTY)
                back = transfer_concepts_to(self.idx, self.store, label, role.inverse, f.ind)
            un.fmls_rc |= back - un.aformulas

        if un.fmls_rc & un.dformulas:
            self._set_status(un, UNSAT)

        while un.status != UNSAT:
            picked = None
            for w in g.state_members.get(u, []):
                if g.node(w).status != UNEXPANDED:
                    continue
                inst = self.applicable_rule(w)
                if inst is not None and PRIORITY[inst.tag] == 5:
                    picked = (inst, w)
                    break
            if picked is None:
                break
            self.apply_rule(picked[0], picked[1])

        if un.status != UNSAT:
            if un.fmls_rc:
                self._set_status(un, INCOMPLETE)
            else:
                un.conv_method = 1

    def apply_conv_rule(self, v) -> None:
        """Re-expand `v` after its state demanded more formulas: drop the
        edge and connect `v` to the repaired alternative(s)."""
        g = self.graph
        node = g.node(v)
        succs = g.successors(v)
        assert len(succs) == 1
        w = succs[0]
        wn = g.node(w)
        assert wn.node_type == STATE
        g.remove_edge(v, w)

        if wn.conv_method == 0:
            new_label = node.label | frozenset(wn.fmls_rc)
            g.con_to_succ(v, NONSTATE, node.stype, None, new_label, node.rformulas, node.dformulas)
        else:
            sets = list(wn.alt_fml_sets_sc)
            singles = sorted((s for s in sets if len(s) == 1), key=lambda s: next(iter(s)).uid)
            rest = sorted(
                (s for s in sets if len(s) > 1),
                key=lambda s: tuple(sorted(f.uid for f in s)),
            )
            chosen = [next(iter(s)) for s in singles]
            for i, phi in enumerate(chosen):
                new_label = node.label | {phi}
                new_dfmls = node.dformulas | frozenset(chosen[:i])
                g.con_to_succ(v, NONSTATE, node.stype, None, new_label, node.rformulas, new_dfmls)
            blocked = frozenset(chosen)
            for x in rest:
                g.con_to_succ(
                    v, NONSTATE, node.stype, None, node.label | x, node.rformulas, node.dformulas | blocked
                )

    # -- status flow ------------------------------------------------------

    def update_status(self, v) -> None:
        g = self.graph
        node = g.node(v)
        if node.status != EXPANDED:
            return
        succ_nodes = [g.node(w) for w in g.successors(v)]
        if node.node_type == NONSTATE:
            if any(w.status == SAT for w in succ_nodes):
                self._set_status(node, SAT)
            elif all(w.status == UNSAT for w in succ_nodes):
                self._set_status(node, UNSAT)
            elif all(w.status in (INCOMPLETE, UNSAT) for w in succ_nodes):
                if any(w.node_type == STATE for w in succ_nodes):
                    # the state is the only successor
                    self.apply_rule(RuleInstance(R_CONV), v)
                else:
                    self._set_status(node, INCOMPLETE)
        else:
            if all(w.status == SAT for w in succ_nodes):
                self._set_status(node, SAT)
            elif any(w.status == UNSAT for w in succ_nodes):
                self._set_status(node, UNSAT)
            else:
                w = next((w for w in succ_nodes if w.status == INCOMPLETE), None)
                if w is not None:
                    node.alt_fml_sets_sc = set(w.alt_fml_sets_scp)
                    self._set_status(node, INCOMPLETE)

    def propagate_status(self, v) -> None:
        work = [v]
        while work:
            x = work.pop()
            for u in list(self.graph.predecessors(x)):
                un = self.graph.node(u)
                if un.status != EXPANDED:
                    continue
                self.update_status(u)
                if un.status in DETERMINED:
                    work.append(u)

    # -- top level ---------------------------------------------------------

    def run(self) -> TableauGraph:
        kb = self.kb
        g = self.graph
        root_label = list(kb.abox)
        for a in kb.individuals:
            for c in kb.tbox:
                f = self.store.inst(a, c)
                if f not in root_label:
                    root_label.append(f)
        root = g.new_succ(None, NONSTATE, COMPLEX, None, frozenset(root_label), EMPTY, EMPTY)
        g.root = root
        rn = g.node(root)
        if t_unsat(self.store, rn.label):
            self._set_status(rn, UNSAT)
        elif self.applicable_rule(root) is None:
            self._set_status(rn, SAT)

        while (v := g.to_expand()) is not None:
            inst = self.applicable_rule(v)
            if inst is None:
                self._set_status(g.node(v), SAT)
                self.propagate_status(v)
                continue
            self.apply_rule(inst, v)
        return g

    def stats(self) -> dict:
        return {
            "nodes": len(self.graph.nodes),
            "states": sum(1 for n in self.graph.nodes if n.node_type == STATE),
            "rule_applications": dict(self.rule_counts),
        }


def build_tableau(kb: KnowledgeBase, strategy: str = "dfs") -> TableauGraph:
    engine = TableauEngine(kb, strategy=strategy)
    return engine.run()


def decide_sat(kb: KnowledgeBase, strategy: str = "dfs") -> Verdict:
    """Decide satisfiability of `kb`: SAT iff the finished root is not
    refuted."""
    engine = TableauEngine(kb, strategy=strategy)
    engine.run()
    sat = engine.graph.node(engine.graph.root).status != UNSAT
    return Verdict(sat=sat, graph=engine.graph, stats=engine.stats(), engine=engine)
