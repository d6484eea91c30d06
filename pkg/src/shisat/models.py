"""Witness models: extraction from a finished graph and semantic checking.

From a run that did not refute the root we first read off a *model
graph*: a finite set of elements, each carrying the concept set of a
fully saturated node, plus raw role edges. ABox individuals take their
concepts from the endpoint of the root's saturation path; every
existential obligation is then realized by following the successor the
engine created for it, walking to a saturated endpoint, and reusing an
element with the same concept set when one exists.

The model graph induces an interpretation once the raw edges are closed
under converses, role inclusion, and transitivity. `eval_concept` and
`check_model` implement the plain set semantics and are shared by the
differential oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import syntax as sx
from .graph import INCOMPLETE, STATE, UNSAT
from .rbox import RBoxIndex
from .syntax import KnowledgeBase, Role, ordered


@dataclass
class ModelGraph:
    domain: list  # elements; ABox individuals first
    concepts: dict  # element -> frozenset of concepts
    edges: dict  # Role -> set of (element, element)
    named: list  # the ABox individuals


@dataclass
class Interpretation:
    domain: list
    atoms: dict  # concept name -> set of elements
    roles: dict  # role *name* -> set of pairs; inverses are derived
    individuals: dict  # individual name -> element


def saturation_path(graph, v) -> list:
    """Walk from the or-node `v` through unrefuted successors until a
    state (or a saturated leaf with nothing left to realize) is reached.

    Deterministic: always the first qualifying successor in creation
    order. Only meaningful on nodes that are neither refuted nor pending
    a converse repair.
    """
    node = graph.node(v)
    assert node.status not in (UNSAT, INCOMPLETE)
    path = [v]
    seen = {v}
    while graph.node(v).node_type != STATE:
        candidates = [
            w for w in sorted(graph.successors(v))
            if graph.node(w).status not in (UNSAT, INCOMPLETE)
        ]
        if not candidates:
            break
        v = candidates[0]
        assert v not in seen, "saturation path revisited a node"
        seen.add(v)
        path.append(v)
    return path


def _fresh_name(taken) -> str:
    i = 1
    while f"x{i}" in taken:
        i += 1
    return f"x{i}"


def extract_model_graph(graph, kb: KnowledgeBase, idx: RBoxIndex) -> ModelGraph:
    """Build a model graph from a finished, unrefuted tableau."""
    root = graph.node(graph.root)
    assert root.status != UNSAT

    path = saturation_path(graph, graph.root)
    vk = path[-1]
    vk_node = graph.node(vk)

    named = list(kb.individuals)
    domain = list(named)
    concepts: dict = {}
    for a in named:
        concepts[a] = frozenset(
            f.concept for f in vk_node.aformulas if f.kind == sx.INST and f.ind == a
        )
    edges: dict = {}
    for f in kb.abox:
        if f.kind == sx.REL:
            edges.setdefault(f.role, set()).add((f.a, f.b))

    anchor: dict = {}  # created element -> its state in the graph
    unresolved = list(named)
    taken = set(domain)

    while unresolved:
        x = unresolved.pop(0)
        for c in ordered(concepts[x]):
            if c.kind != sx.SOME:
                continue
            if x in named:
                u = vk
                want = kb.store.inst(x, c)
            else:
                u = anchor[x]
                want = c
            w0 = next(
                (w for w in graph.successors(u) if graph.node(w).ce_label is want),
                None,
            )
            assert w0 is not None, "missing realization for an existential obligation"
            wpath = saturation_path(graph, w0)
            wh = graph.node(wpath[-1])
            target = frozenset(wh.aformulas)
            y = next(
                (e for e in domain if e not in named and concepts[e] == target),
                None,
            )
            if y is None:
                y = _fresh_name(taken)
                taken.add(y)
                domain.append(y)
                concepts[y] = target
                anchor[y] = wpath[-1]
                unresolved.append(y)
            edges.setdefault(c.role, set()).add((x, y))

    return ModelGraph(domain=domain, concepts=concepts, edges=edges, named=named)


def close_role_relations(edges: dict, idx: RBoxIndex) -> dict:
    """Least extension of the raw edges that is converse-coherent,
    monotone under role inclusion, and transitive where required."""
    closed: dict = {r: set() for r in idx.roles}
    for role, pairs in edges.items():
        closed.setdefault(role, set()).update(pairs)

    changed = True
    while changed:
        changed = False
        for role in list(closed):
            inv = closed.setdefault(role.inverse, set())
            for (a, b) in list(closed[role]):
                if (b, a) not in inv:
                    inv.add((b, a))
                    changed = True
        for (r, s) in idx.subrole_pairs:
            if r == s:
                continue
            src = closed.get(r)
            if not src:
                continue
            dst = closed.setdefault(s, set())
            before = len(dst)
            dst.update(src)
            if len(dst) != before:
                changed = True
        for role in idx.transitive:
            pairs = closed.get(role)
            if not pairs:
                continue
            extra = {
                (a, d)
                for (a, b) in pairs
                for (c, d) in pairs
                if b == c and (a, d) not in pairs
            }
            if extra:
                pairs.update(extra)
                changed = True
    return closed


def complete_relations(mg: ModelGraph, idx: RBoxIndex, concept_names=()) -> Interpretation:
    """The interpretation a model graph stands for."""
    closed = close_role_relations(mg.edges, idx)
    atoms: dict = {name: set() for name in concept_names}
    for x, cs in mg.concepts.items():
        for c in cs:
            if c.kind == sx.ATOM:
                atoms.setdefault(c.name, set()).add(x)
    roles: dict = {}
    for role, pairs in closed.items():
        if not role.inverted:
            roles[role.name] = set(pairs)
    for r in idx.roles:
        if not r.inverted:
            roles.setdefault(r.name, set())
    return Interpretation(
        domain=list(mg.domain),
        atoms=atoms,
        roles=roles,
        individuals={a: a for a in mg.named},
    )


def role_pairs(interp: Interpretation, role: Role) -> set:
    if role.name not in interp.roles:
        raise ValueError(f"unknown role name {role.name!r}")
    pairs = interp.roles[role.name]
    if role.inverted:
        return {(b, a) for (a, b) in pairs}
    return pairs


def eval_concept(interp: Interpretation, concept) -> set:
    """The denotation of `concept` in `interp` under the standard set
    semantics."""
    k = concept.kind
    domain = set(interp.domain)
    if k == sx.TOP:
        return domain
    if k == sx.BOT:
        return set()
    if k == sx.ATOM:
        if concept.name not in interp.atoms:
            raise ValueError(f"unknown concept name {concept.name!r}")
        return set(interp.atoms[concept.name])
    if k == sx.NOT:
        return domain - eval_concept(interp, concept.child)
    if k == sx.AND:
        return eval_concept(interp, concept.left) & eval_concept(interp, concept.right)
    if k == sx.OR:
        return eval_concept(interp, concept.left) | eval_concept(interp, concept.right)
    if k == sx.ALL:
        pairs = role_pairs(interp, concept.role)
        inner = eval_concept(interp, concept.child)
        return {x for x in domain if all(y in inner for (a, y) in pairs if a == x)}
    if k == sx.SOME:
        pairs = role_pairs(interp, concept.role)
        inner = eval_concept(interp, concept.child)
        return {x for x in domain if any(y in inner for (a, y) in pairs if a == x)}
    raise ValueError(f"unknown concept kind {k!r}")


def check_model(interp: Interpretation, kb: KnowledgeBase) -> bool:
    """Does `interp` satisfy every axiom and assertion of `kb`?"""
    for (r, s) in kb.role_subsumptions:
        if not role_pairs(interp, r) <= role_pairs(interp, s):
            return False
    for r in kb.transitive_roles:
        pairs = role_pairs(interp, r)
        for (a, b) in pairs:
            for (c, d) in pairs:
                if b == c and (a, d) not in pairs:
                    return False
    domain = set(interp.domain)
    for concept in kb.tbox:
        if eval_concept(interp, concept) != domain:
            return False
    for f in kb.abox:
        if f.kind == sx.INST:
            if interp.individuals[f.ind] not in eval_concept(interp, f.concept):
                return False
        else:
            pair = (interp.individuals[f.a], interp.individuals[f.b])
            if pair not in role_pairs(interp, f.role):
                return False
    return True


def build_witness(graph, kb: KnowledgeBase, idx: RBoxIndex) -> Interpretation:
    """Extraction pipeline: model graph, then relation completion."""
    mg = extract_model_graph(graph, kb, idx)
    return complete_relations(mg, idx, kb.concept_names)
