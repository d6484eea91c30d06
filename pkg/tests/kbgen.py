"""Random and parametric knowledge bases for the differential and scaling
suites. Everything is emitted as text so the parser is exercised too."""
from __future__ import annotations

import random

INDIVIDUALS = ("a", "b")
ROLE_NAMES = ("r", "s")
CONCEPT_NAMES = ("A", "B", "C")


def _role(rng: random.Random) -> str:
    name = rng.choice(ROLE_NAMES)
    return name + "-" if rng.random() < 0.3 else name


def _concept(rng: random.Random, depth: int) -> str:
    if depth == 0:
        pick = rng.random()
        if pick < 0.70:
            return rng.choice(CONCEPT_NAMES)
        if pick < 0.80:
            return f"(not {rng.choice(CONCEPT_NAMES)})"
        if pick < 0.90:
            return "top"
        return "bot"
    pick = rng.random()
    if pick < 0.22:
        return f"(and {_concept(rng, depth - 1)} {_concept(rng, depth - 1)})"
    if pick < 0.30:
        return f"(and {_concept(rng, depth - 1)} {_concept(rng, depth - 1)} {_concept(rng, depth - 1)})"
    if pick < 0.52:
        return f"(or {_concept(rng, depth - 1)} {_concept(rng, depth - 1)})"
    if pick < 0.70:
        return f"(all {_role(rng)} {_concept(rng, depth - 1)})"
    if pick < 0.88:
        return f"(some {_role(rng)} {_concept(rng, depth - 1)})"
    if pick < 0.94:
        return f"(not {_concept(rng, depth - 1)})"
    return rng.choice(CONCEPT_NAMES)


def random_kb_text(rng: random.Random) -> str:
    """One small knowledge base: at most 2 individuals, 2 role names,
    3 concept names, concept depth 2, and 2 role axioms."""
    lines = []
    for _ in range(rng.randint(0, 2)):
        if rng.random() < 0.5:
            lines.append(f"sub {_role(rng)} {_role(rng)}")
        else:
            lines.append(f"trans {rng.choice(ROLE_NAMES)}")
    for _ in range(rng.randint(0, 2)):
        kind = "impl" if rng.random() < 0.8 else "equiv"
        lines.append(f"{kind} {_concept(rng, 1)} {_concept(rng, rng.randint(1, 2))}")
    n_abox = rng.randint(1, 3)
    inds = INDIVIDUALS[: rng.randint(1, 2)]
    for _ in range(n_abox):
        if rng.random() < 0.75:
            lines.append(f"inst {rng.choice(inds)} {_concept(rng, rng.randint(0, 2))}")
        else:
            lines.append(f"rel {_role(rng)} {rng.choice(inds)} {rng.choice(inds)}")
    return "\n".join(lines) + "\n"


def differential_suite(count: int, seed: int = 20240817) -> list:
    rng = random.Random(seed)
    return [random_kb_text(rng) for _ in range(count)]


def chain_kb_text(depth: int) -> str:
    """A chain family whose closure grows linearly with `depth`: nested
    existentials interleaved with disjunctions and a transitive
    constraint that follows the chain down."""
    concept = f"(and A{depth} B{depth})"
    for i in range(depth, 0, -1):
        concept = f"(and A{i} (some r (or B{i} {concept})))"
    lines = [
        "sub r s",
        "trans s",
        f"inst a (and (all s (or A0 B0)) {concept})",
    ]
    return "\n".join(lines) + "\n"
