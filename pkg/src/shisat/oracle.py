"""Bounded brute-force satisfiability search, independent of the engine.

For each domain size up to the bound, the knowledge base is grounded over
the finite domain: one boolean per atomic-concept membership and one per
role-name pair (inverse roles read the pair backwards). TBox concepts are
required at every element, assertions at the mapped individuals, role
axioms at every ground instance. The grounded constraints are searched by
plain backtracking with three-valued evaluation, which enumerates exactly
the interpretations the naive nested loops would, just skipping branches
already refuted by a partial assignment.

Two symmetry reductions keep this quick and lose no models: individual
maps are enumerated in restricted-growth form, and the elements no
individual is mapped to must carry lexicographically non-increasing
atom vectors.

The result is trusted only positively. A returned interpretation is
validated with `check_model` before it leaves this module; `None` means
nothing more than "no model of size <= k".
"""
from __future__ import annotations

from itertools import product

from . import syntax as sx
from .models import Interpretation, check_model
from .syntax import KnowledgeBase, Role

TRUE = ("const", True)
FALSE = ("const", False)


class SearchBudgetExceeded(RuntimeError):
    """The configured enumeration budget ran out before an answer."""


def _var(key):
    return ("var", key)


def _neg(tree):
    if tree[0] == "const":
        return ("const", not tree[1])
    return ("not", tree)


def _conj(parts):
    parts = [p for p in parts if p != TRUE]
    if any(p == FALSE for p in parts):
        return FALSE
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return ("and", tuple(parts))


def _disj(parts):
    parts = [p for p in parts if p != FALSE]
    if any(p == TRUE for p in parts):
        return TRUE
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return ("or", tuple(parts))


def _role_lit(role: Role, i: int, j: int):
    if role.inverted:
        return _var(("role", role.name, j, i))
    return _var(("role", role.name, i, j))


def _ground_concept(concept, e: int, n: int):
    k = concept.kind
    if k == sx.TOP:
        return TRUE
    if k == sx.BOT:
        return FALSE
    if k == sx.ATOM:
        return _var(("atom", concept.name, e))
    if k == sx.NOT:
        return _neg(_ground_concept(concept.child, e, n))
    if k == sx.AND:
        return _conj([_ground_concept(concept.left, e, n), _ground_concept(concept.right, e, n)])
    if k == sx.OR:
        return _disj([_ground_concept(concept.left, e, n), _ground_concept(concept.right, e, n)])
    if k == sx.ALL:
        return _conj(
            [_disj([_neg(_role_lit(concept.role, e, j)), _ground_concept(concept.child, j, n)]) for j in range(n)]
        )
    if k == sx.SOME:
        return _disj(
            [_conj([_role_lit(concept.role, e, j), _ground_concept(concept.child, j, n)]) for j in range(n)]
        )
    raise ValueError(f"unknown concept kind {k!r}")


def _atom_vector(kb: KnowledgeBase, e: int):
    return [_var(("atom", name, e)) for name in kb.concept_names]


def _lex_ge(xs, ys):
    # xs >=lex ys over boolean vectors of equal length.
    if not xs:
        return TRUE
    x, y = xs[0], ys[0]
    gt = _conj([x, _neg(y)])
    eq = _disj([_conj([x, y]), _conj([_neg(x), _neg(y)])])
    return _disj([gt, _conj([eq, _lex_ge(xs[1:], ys[1:])])])


def _ground_constraints(kb: KnowledgeBase, n: int, iota: dict) -> list:
    out = []
    for concept in kb.tbox:
        for e in range(n):
            out.append(_ground_concept(concept, e, n))
    for f in kb.abox:
        if f.kind == sx.INST:
            out.append(_ground_concept(f.concept, iota[f.ind], n))
        else:
            out.append(_role_lit(f.role, iota[f.a], iota[f.b]))
    for (r, s) in kb.role_subsumptions:
        for i in range(n):
            for j in range(n):
                out.append(_disj([_neg(_role_lit(r, i, j)), _role_lit(s, i, j)]))
    for r in kb.transitive_roles:
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    out.append(
                        _disj([_neg(_role_lit(r, i, j)), _neg(_role_lit(r, j, l)), _role_lit(r, i, l)])
                    )
    anonymous = [e for e in range(n) if e not in set(iota.values())]
    for a, b in zip(anonymous, anonymous[1:]):
        out.append(_lex_ge(_atom_vector(kb, a), _atom_vector(kb, b)))
    return [c for c in out if c != TRUE]


def _eval3(tree, asgn):
    op = tree[0]
    if op == "const":
        return tree[1]
    if op == "var":
        return asgn.get(tree[1])
    if op == "not":
        v = _eval3(tree[1], asgn)
        return None if v is None else not v
    if op == "and":
        unknown = False
        for sub in tree[1]:
            v = _eval3(sub, asgn)
            if v is False:
                return False
            if v is None:
                unknown = True
        return None if unknown else True
    # or
    unknown = False
    for sub in tree[1]:
        v = _eval3(sub, asgn)
        if v is True:
            return True
        if v is None:
            unknown = True
    return None if unknown else False


def _vars_of(tree, acc):
    op = tree[0]
    if op == "var":
        if tree[1] not in acc:
            acc.append(tree[1])
    elif op == "not":
        _vars_of(tree[1], acc)
    elif op in ("and", "or"):
        for sub in tree[1]:
            _vars_of(sub, acc)


def _restricted_growth_maps(inds, n):
    """Individual maps canonical up to renaming of the hit elements."""
    if not inds:
        yield {}
        return
    for tup in product(range(n), repeat=len(inds)):
        top = -1
        ok = True
        for v in tup:
            if v > top + 1:
                ok = False
                break
            top = max(top, v)
        if ok:
            yield dict(zip(inds, tup))


def _solve(constraints, budget) -> dict | None:
    var_lists = []
    for c in constraints:
        acc: list = []
        _vars_of(c, acc)
        var_lists.append(acc)
    asgn: dict = {}

    def bt() -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchBudgetExceeded("bounded model search budget exhausted")
        pending = None
        for c, cvars in zip(constraints, var_lists):
            v = _eval3(c, asgn)
            if v is False:
                return False
            if v is None and pending is None:
                pending = cvars
        if pending is None:
            return True
        x = next(v for v in pending if v not in asgn)
        for val in (True, False):
            asgn[x] = val
            if bt():
                return True
            del asgn[x]
        return False

    return dict(asgn) if bt() else None


def _to_interpretation(kb: KnowledgeBase, n: int, iota: dict, asgn: dict) -> Interpretation:
    atoms = {name: set() for name in kb.concept_names}
    roles = {name: set() for name in kb.role_names}
    for key, val in asgn.items():
        if not val:
            continue
        if key[0] == "atom":
            atoms[key[1]].add(key[2])
        else:
            roles[key[1]].add((key[2], key[3]))
    return Interpretation(domain=list(range(n)), atoms=atoms, roles=roles, individuals=dict(iota))


def bounded_model_search(kb: KnowledgeBase, k: int, budget: int = 2_000_000):
    """First model of `kb` with at most `k` elements, or None.

    None only rules out models up to the bound; it is never a proof of
    unsatisfiability.
    """
    if k < 1:
        raise ValueError("domain bound must be positive")
    remaining = [budget]
    for n in range(1, k + 1):
        for iota in _restricted_growth_maps(kb.individuals, n):
            constraints = _ground_constraints(kb, n, iota)
            asgn = _solve(constraints, remaining)
            if asgn is not None:
                interp = _to_interpretation(kb, n, iota, asgn)
                assert check_model(interp, kb), "search produced a non-model"
                return interp
    return None
