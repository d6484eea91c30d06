"""Role-box closure and queries.

The role box of an SHI knowledge base contains axioms R <= S and
trans(R). Reasoning needs the closure of these axioms under reflexivity,
inverses, and chaining of inclusions, which is finite because the role
universe is just the declared names and their inverses. The closure is
computed once up front and served from sets.
"""
from __future__ import annotations

from .syntax import Role, role_order


class RBoxIndex:
    """Immutable view of the closed role box."""

    __slots__ = ("roles", "subrole_pairs", "transitive", "_role_set", "_subrole_lists")

    def __init__(self, roles, subrole_pairs, transitive):
        self.roles = tuple(roles)
        self.subrole_pairs = frozenset(subrole_pairs)
        self.transitive = frozenset(transitive)
        self._role_set = frozenset(roles)
        self._subrole_lists = {}
        for s in self.roles:
            subs = sorted((r for (r, t) in self.subrole_pairs if t == s), key=role_order)
            self._subrole_lists[s] = subs

    def _check(self, role: Role) -> None:
        if role not in self._role_set:
            raise ValueError(f"role {role} is not declared in the knowledge base")

    def is_subrole(self, r: Role, s: Role) -> bool:
        self._check(r)
        self._check(s)
        return (r, s) in self.subrole_pairs

    def is_transitive(self, r: Role) -> bool:
        self._check(r)
        return r in self.transitive

    def srtr(self, r: Role, s: Role) -> bool:
        """True when r <= s and s is transitive: exactly the situation in
        which a value restriction over s must follow an r edge unweakened."""
        return self.is_subrole(r, s) and self.is_transitive(s)

    def subroles_of(self, s: Role) -> list:
        self._check(s)
        return list(self._subrole_lists[s])


def build_ext(subsumptions, transitive, role_names) -> RBoxIndex:
    """Least closure of the role axioms over the given signature.

    Computed by iterating the closure conditions to a fixpoint; the role
    universe has 2*len(role_names) members so this is immediate.
    """
    roles = []
    for name in role_names:
        roles.append(Role(name, False))
        roles.append(Role(name, True))
    role_set = set(roles)

    pairs = {(r, r) for r in roles}
    for r, s in subsumptions:
        if r not in role_set or s not in role_set:
            raise ValueError(f"role axiom mentions undeclared role: {r} <= {s}")
        pairs.add((r, s))
    trans = set()
    for r in transitive:
        if r not in role_set:
            raise ValueError(f"transitivity axiom mentions undeclared role: {r}")
        trans.add(r)

    changed = True
    while changed:
        changed = False
        for r, s in list(pairs):
            inv = (r.inverse, s.inverse)
            if inv not in pairs:
                pairs.add(inv)
                changed = True
        for r in list(trans):
            if r.inverse not in trans:
                trans.add(r.inverse)
                changed = True
        for r, s in list(pairs):
            for s2, t in list(pairs):
                if s2 == s and (r, t) not in pairs:
                    pairs.add((r, t))
                    changed = True

    return RBoxIndex(sorted(roles, key=role_order), pairs, trans)


def kb_index(kb) -> RBoxIndex:
    return build_ext(kb.role_subsumptions, kb.transitive_roles, kb.role_names)
