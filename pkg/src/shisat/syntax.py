"""Concept and assertion syntax for SHI knowledge bases.

Everything the reasoner manipulates is built here: roles (with inverses),
concepts, ABox assertions, and knowledge bases. Concepts are kept in
negation normal form at all times -- the only negation nodes ever
constructed sit directly on concept names, so downstream code never has
to normalize.

Concepts and assertions are interned: structurally equal formulas are the
same Python object. Identity doubles as equality, membership tests are
pointer comparisons, and every formula carries a stable creation index
(`uid`) that gives a fixed total order used wherever a deterministic
choice among formulas is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union


class Role(NamedTuple):
    """A role name or its inverse."""

    name: str
    inverted: bool = False

    @property
    def inverse(self) -> "Role":
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return self.name + "-" if self.inverted else self.name


def role_order(role: Role) -> tuple:
    return (role.name, role.inverted)


# Concept kinds.
TOP = "top"
BOT = "bot"
ATOM = "atom"
NOT = "not"
AND = "and"
OR = "or"
ALL = "all"
SOME = "some"

# Assertion kinds.
INST = "inst"
REL = "rel"


class Concept:
    """A concept in NNF. Create instances only through a FormulaStore."""

    __slots__ = ("kind", "name", "role", "left", "right", "child", "uid")

    def __init__(self, kind, uid, name=None, role=None, left=None, right=None, child=None):
        self.kind = kind
        self.uid = uid
        self.name = name
        self.role = role
        self.left = left
        self.right = right
        self.child = child

    def __repr__(self) -> str:
        return concept_text(self)


class Assertion:
    """An ABox assertion: ind:Concept or Role(ind, ind)."""

    __slots__ = ("kind", "ind", "concept", "role", "a", "b", "uid")

    def __init__(self, kind, uid, ind=None, concept=None, role=None, a=None, b=None):
        self.kind = kind
        self.uid = uid
        self.ind = ind
        self.concept = concept
        self.role = role
        self.a = a
        self.b = b

    def __repr__(self) -> str:
        return formula_text(self)


Formula = Union[Concept, Assertion]


class FormulaStore:
    """Interning store for concepts and assertions.

    The store owns the uid sequence. A knowledge base and every formula the
    engine derives from it share one store, so formula identity and the
    uid order are stable for the lifetime of the problem.
    """

    def __init__(self) -> None:
        self._table: dict = {}
        self._next = 0
        self.top = self._make((TOP,), Concept, TOP)
        self.bot = self._make((BOT,), Concept, BOT)

    def _make(self, key, cls, kind, **fields):
        obj = self._table.get(key)
        if obj is None:
            obj = cls(kind, self._next, **fields)
            self._next += 1
            self._table[key] = obj
        return obj

    def atom(self, name: str) -> Concept:
        return self._make((ATOM, name), Concept, ATOM, name=name)

    def conj(self, left: Concept, right: Concept) -> Concept:
        return self._make((AND, left.uid, right.uid), Concept, AND, left=left, right=right)

    def disj(self, left: Concept, right: Concept) -> Concept:
        return self._make((OR, left.uid, right.uid), Concept, OR, left=left, right=right)

    def univ(self, role: Role, child: Concept) -> Concept:
        return self._make((ALL, role, child.uid), Concept, ALL, role=role, child=child)

    def exist(self, role: Role, child: Concept) -> Concept:
        return self._make((SOME, role, child.uid), Concept, SOME, role=role, child=child)

    def negated_atom(self, name: str) -> Concept:
        atom = self.atom(name)
        return self._make((NOT, atom.uid), Concept, NOT, child=atom)

    def negate(self, concept: Concept) -> Concept:
        """NNF of the negation of `concept` (the usual dualities)."""
        k = concept.kind
        if k == TOP:
            return self.bot
        if k == BOT:
            return self.top
        if k == ATOM:
            return self.negated_atom(concept.name)
        if k == NOT:
            return concept.child
        if k == AND:
            return self.disj(self.negate(concept.left), self.negate(concept.right))
        if k == OR:
            return self.conj(self.negate(concept.left), self.negate(concept.right))
        if k == ALL:
            return self.exist(concept.role, self.negate(concept.child))
        if k == SOME:
            return self.univ(concept.role, self.negate(concept.child))
        raise ValueError(f"unknown concept kind {k!r}")

    def inst(self, ind: str, concept: Concept) -> Assertion:
        return self._make((INST, ind, concept.uid), Assertion, INST, ind=ind, concept=concept)

    def rel(self, role: Role, a: str, b: str) -> Assertion:
        return self._make((REL, role, a, b), Assertion, REL, role=role, a=a, b=b)


def complement(store: FormulaStore, formula: Formula) -> Formula:
    """NNF complement of a concept or concept assertion.

    Role assertions have no complement in this language and are rejected.
    """
    if isinstance(formula, Concept):
        return store.negate(formula)
    if formula.kind == INST:
        return store.inst(formula.ind, store.negate(formula.concept))
    raise ValueError("role assertions have no complement")


def _disj_flat(store: FormulaStore, left: Concept, right: Concept) -> Concept:
    # Unit cases collapse so that a `top`-guarded axiom contributes its
    # right-hand side directly as a global assumption.
    if left.kind == BOT:
        return right
    if right.kind == BOT:
        return left
    if left.kind == TOP or right.kind == TOP:
        return store.top
    return store.disj(left, right)


def _conj_flat(store: FormulaStore, left: Concept, right: Concept) -> Concept:
    if left.kind == TOP:
        return right
    if right.kind == TOP:
        return left
    if left.kind == BOT or right.kind == BOT:
        return store.bot
    return store.conj(left, right)


def internalize_tbox(store: FormulaStore, axioms: Iterable[tuple]) -> list:
    """Turn subsumption/equivalence axioms into global NNF concepts.

    An axiom C <= D becomes (negate C) or D; C == D becomes the conjunction
    of both directions. Resulting `top` members say nothing and are dropped.
    """
    out = []
    for kind, left, right in axioms:
        if kind == "impl":
            concept = _disj_flat(store, store.negate(left), right)
        elif kind == "equiv":
            fwd = _disj_flat(store, store.negate(left), right)
            bwd = _disj_flat(store, store.negate(right), left)
            concept = _conj_flat(store, fwd, bwd)
        else:
            raise ValueError(f"unknown TBox axiom kind {kind!r}")
        if concept.kind != TOP and concept not in out:
            out.append(concept)
    return out


@dataclass
class KnowledgeBase:
    """A normalized SHI knowledge base.

    `tbox` holds the internalized global concepts; `tbox_axioms` keeps the
    axioms as written so the textual form can be reproduced. The ABox is
    never empty: normalization inserts a fresh `ind:top` when needed.
    """

    store: FormulaStore
    role_subsumptions: list  # [(Role, Role)] meaning R <= S
    transitive_roles: list  # [Role]
    tbox_axioms: list  # [("impl"|"equiv", Concept, Concept)]
    tbox: list  # [Concept] internalized, NNF
    abox: list  # [Assertion]
    role_names: list
    concept_names: list
    individuals: list


def _scan_concept(concept: Concept, role_names: list, concept_names: list) -> None:
    k = concept.kind
    if k == ATOM:
        if concept.name not in concept_names:
            concept_names.append(concept.name)
    elif k == NOT:
        _scan_concept(concept.child, role_names, concept_names)
    elif k in (AND, OR):
        _scan_concept(concept.left, role_names, concept_names)
        _scan_concept(concept.right, role_names, concept_names)
    elif k in (ALL, SOME):
        if concept.role.name not in role_names:
            role_names.append(concept.role.name)
        _scan_concept(concept.child, role_names, concept_names)


def build_kb(store, subsumptions, transitive, tbox_axioms, abox) -> KnowledgeBase:
    """Assemble and normalize a knowledge base from parsed parts."""
    abox = list(abox)
    if not abox:
        abox.append(store.inst("a0", store.top))

    tbox = internalize_tbox(store, tbox_axioms)

    role_names: list = []
    concept_names: list = []
    individuals: list = []
    for r, s in subsumptions:
        for role in (r, s):
            if role.name not in role_names:
                role_names.append(role.name)
    for role in transitive:
        if role.name not in role_names:
            role_names.append(role.name)
    for _, left, right in tbox_axioms:
        _scan_concept(left, role_names, concept_names)
        _scan_concept(right, role_names, concept_names)
    for concept in tbox:
        _scan_concept(concept, role_names, concept_names)
    for f in abox:
        if f.kind == INST:
            if f.ind not in individuals:
                individuals.append(f.ind)
            _scan_concept(f.concept, role_names, concept_names)
        else:
            if f.role.name not in role_names:
                role_names.append(f.role.name)
            for ind in (f.a, f.b):
                if ind not in individuals:
                    individuals.append(ind)

    return KnowledgeBase(
        store=store,
        role_subsumptions=list(subsumptions),
        transitive_roles=list(transitive),
        tbox_axioms=list(tbox_axioms),
        tbox=tbox,
        abox=abox,
        role_names=role_names,
        concept_names=concept_names,
        individuals=individuals,
    )


def subconcepts(concept: Concept) -> Iterator[Concept]:
    """All subconcepts of `concept`, including itself."""
    yield concept
    k = concept.kind
    if k == NOT:
        yield from subconcepts(concept.child)
    elif k in (AND, OR):
        yield from subconcepts(concept.left)
        yield from subconcepts(concept.right)
    elif k in (ALL, SOME):
        yield from subconcepts(concept.child)


def closure(kb: KnowledgeBase, idx=None) -> frozenset:
    """The finite formula universe every tableau label draws from.

    Contains: every concept occurring in the TBox or ABox (as a formula or
    subformula) plus its assertion forms for all ABox individuals; every
    value restriction obtained by narrowing an occurring one to a subrole,
    again with assertion forms; and the ABox role assertions themselves.
    """
    if idx is None:
        from .rbox import kb_index

        idx = kb_index(kb)
    store = kb.store

    occurring: set = set()
    for concept in kb.tbox:
        occurring.update(subconcepts(concept))
    for f in kb.abox:
        if f.kind == INST:
            occurring.update(subconcepts(f.concept))

    universe: set = set(occurring)
    for concept in list(occurring):
        if concept.kind == ALL:
            for role in idx.subroles_of(concept.role):
                universe.add(store.univ(role, concept.child))

    out: set = set(universe)
    for concept in universe:
        for ind in kb.individuals:
            out.add(store.inst(ind, concept))
    for f in kb.abox:
        if f.kind == REL:
            out.add(f)
    return frozenset(out)


def ordered(formulas: Iterable[Formula]) -> list:
    """Formulas sorted by their fixed creation order."""
    return sorted(formulas, key=lambda f: f.uid)


def concept_text(concept: Concept) -> str:
    k = concept.kind
    if k == TOP:
        return "top"
    if k == BOT:
        return "bot"
    if k == ATOM:
        return concept.name
    if k == NOT:
        return f"(not {concept_text(concept.child)})"
    if k == AND:
        return f"(and {concept_text(concept.left)} {concept_text(concept.right)})"
    if k == OR:
        return f"(or {concept_text(concept.left)} {concept_text(concept.right)})"
    if k == ALL:
        return f"(all {concept.role} {concept_text(concept.child)})"
    if k == SOME:
        return f"(some {concept.role} {concept_text(concept.child)})"
    raise ValueError(f"unknown concept kind {k!r}")


def formula_text(formula: Formula) -> str:
    if isinstance(formula, Concept):
        return concept_text(formula)
    if formula.kind == INST:
        return f"{formula.ind}:{concept_text(formula.concept)}"
    return f"{formula.role}({formula.a},{formula.b})"
