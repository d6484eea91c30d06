"""The rooted and-or graph the satisfiability search is built on.

Nodes are immutable in their logical content (label, reduced formulas,
disallowed formulas) once created; only status and the converse-repair
bookkeeping fields change afterwards. States are and-nodes, everything
else is an or-node. Two caches keep the graph from blowing up:

  * a global cache over states -- two states never share the triple
    (label, rformulas, dformulas);
  * per local graph, the same uniqueness for or-nodes. A local graph is
    everything reachable from a node without crossing a state; every
    member shares one `after_trans_pred`, which scopes the cache.

Edges form a set. The only deletion ever performed removes the edge into
a state that demanded a converse repair; the state itself stays and can
be reached again through the cache.
"""
from __future__ import annotations

from collections import deque

from .syntax import ordered

STATE = "state"
NONSTATE = "nonstate"

COMPLEX = "complex"
SIMPLE = "simple"

UNEXPANDED = "unexpanded"
EXPANDED = "expanded"
INCOMPLETE = "incomplete"
UNSAT = "unsat"
SAT = "sat"

DETERMINED = (INCOMPLETE, UNSAT, SAT)


class TableauNode:
    __slots__ = (
        "id",
        "node_type",
        "stype",
        "status",
        "label",
        "rformulas",
        "dformulas",
        "state_pred",
        "after_trans_pred",
        "ce_label",
        "conv_method",
        "fmls_rc",
        "alt_fml_sets_sc",
        "alt_fml_sets_scp",
        "rule",
        "expansions",
    )

    def __init__(self, node_id, node_type, stype, label, rformulas, dformulas):
        self.id = node_id
        self.node_type = node_type
        self.stype = stype
        self.status = UNEXPANDED
        self.label = frozenset(label)
        self.rformulas = frozenset(rformulas)
        self.dformulas = frozenset(dformulas)
        self.state_pred = None
        self.after_trans_pred = None
        self.ce_label = None
        self.conv_method = 0
        self.fmls_rc = set()
        self.alt_fml_sets_sc = set()
        self.alt_fml_sets_scp = set()
        self.rule = None
        self.expansions = 0

    @property
    def aformulas(self) -> frozenset:
        return self.label | self.rformulas

    def triple_key(self) -> tuple:
        return (
            self.stype,
            tuple(sorted(f.uid for f in self.label)),
            tuple(sorted(f.uid for f in self.rformulas)),
            tuple(sorted(f.uid for f in self.dformulas)),
        )

    def __repr__(self) -> str:
        return f"<node {self.id} {self.node_type}/{self.stype} {self.status} {ordered(self.label)}>"


def _key(stype, label, rformulas, dformulas) -> tuple:
    return (
        stype,
        tuple(sorted(f.uid for f in label)),
        tuple(sorted(f.uid for f in rformulas)),
        tuple(sorted(f.uid for f in dformulas)),
    )


class TableauGraph:
    def __init__(self, strategy: str = "dfs"):
        if strategy not in ("dfs", "fifo"):
            raise ValueError(f"unknown expansion strategy {strategy!r}")
        self.strategy = strategy
        self.nodes: list = []
        self.succs: list = []
        self.preds: list = []
        self.root: int | None = None
        self._state_cache: dict = {}
        self._local_caches: dict = {}  # after_trans_pred id -> {key: node id}
        self._queue: deque = deque()
        self.state_members: dict = {}  # state id -> ids of its local graph's or-nodes

    # -- basic access ------------------------------------------------

    def node(self, node_id: int) -> TableauNode:
        return self.nodes[node_id]

    def successors(self, node_id: int) -> list:
        return self.succs[node_id]

    def predecessors(self, node_id: int) -> list:
        return self.preds[node_id]

    def state_ids(self) -> list:
        return [n.id for n in self.nodes if n.node_type == STATE]

    def add_edge(self, v: int, w: int) -> None:
        if w not in self.succs[v]:
            self.succs[v].append(w)
            self.preds[w].append(v)

    def remove_edge(self, v: int, w: int) -> None:
        self.succs[v].remove(w)
        self.preds[w].remove(v)

    # -- node creation and caching ------------------------------------

    def new_succ(self, v, node_type, stype, ce_label, label, rformulas, dformulas) -> int:
        """Append a fresh unexpanded node and hook it under `v` (or make it
        the root when `v` is None)."""
        node_id = len(self.nodes)
        node = TableauNode(node_id, node_type, stype, label, rformulas, dformulas)
        self.nodes.append(node)
        self.succs.append([])
        self.preds.append([])
        if v is not None:
            self.add_edge(v, node_id)

        if node_type == NONSTATE:
            parent = self.nodes[v] if v is not None else None
            if parent is None or parent.node_type == STATE:
                node.state_pred = v
                node.after_trans_pred = node_id
            else:
                node.state_pred = parent.state_pred
                node.after_trans_pred = parent.after_trans_pred
            if parent is not None and parent.node_type == STATE:
                node.ce_label = ce_label
            if node.state_pred is not None:
                self.state_members.setdefault(node.state_pred, []).append(node_id)
            key = _key(stype, label, rformulas, dformulas)
            scope = self._local_caches.setdefault(node.after_trans_pred, {})
            assert key not in scope, "duplicate triple in a local graph"
            scope[key] = node_id
        else:
            assert v is None or self.nodes[v].node_type == NONSTATE
            key = _key(stype, label, rformulas, dformulas)
            assert key not in self._state_cache, "duplicate state triple"
            self._state_cache[key] = node_id

        self._queue.append(node_id)
        return node_id

    def find_proxy(self, node_type, stype, v1, label, rformulas, dformulas):
        """The unique existing node matching the attributes, if any.

        States are looked up globally; or-nodes only within the local
        graph rooted at `v1`.
        """
        key = _key(stype, label, rformulas, dformulas)
        if node_type == STATE:
            return self._state_cache.get(key)
        return self._local_caches.get(v1, {}).get(key)

    def con_to_succ(self, v, node_type, stype, ce_label, label, rformulas, dformulas) -> int:
        """Connect `v` to a node with the given content, creating it only
        when no cached one exists."""
        v1 = None if node_type == STATE else self.nodes[v].after_trans_pred
        w = self.find_proxy(node_type, stype, v1, label, rformulas, dformulas)
        if w is not None:
            self.add_edge(v, w)
            return w
        return self.new_succ(v, node_type, stype, ce_label, label, rformulas, dformulas)

    # -- expansion queue ----------------------------------------------

    def to_expand(self):
        """Next unexpanded node per the configured strategy, or None."""
        while self._queue:
            node_id = self._queue.pop() if self.strategy == "dfs" else self._queue.popleft()
            if self.nodes[node_id].status == UNEXPANDED:
                return node_id
        return None
