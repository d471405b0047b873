"""Directed acyclic graph models with finite-level vertices.

A model is a DAG on vertices 1..n together with the number of levels
(possible values) each vertex can take.  Loaders renumber vertices so
that every edge points from a smaller to a larger id; the downstream
algebra does not depend on which admissible numbering is chosen, so a
canonical one (smallest available id first) is fixed once here.

Separation queries come in two implementations: a reachability sweep
used everywhere, and an exhaustive trail enumeration kept as its
correctness oracle for small graphs.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .errors import GuardExceeded, InputError


@dataclass(frozen=True)
class Limits:
    """Size guards for the exhaustive enumerations.

    max_n bounds the 4^n statement enumeration, max_trail_n the
    exhaustive trail oracle, max_subset_n the induced-cycle subset scan,
    and max_monomials the number of rows of any graded coefficient
    matrix.
    """

    max_n: int = 10
    max_trail_n: int = 10
    max_subset_n: int = 12
    max_monomials: int = 100_000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class DagModel:
    """A canonically numbered DAG with per-vertex level counts.

    ``cards[i-1]`` is the number of levels of vertex ``i``.  Every edge
    ``(i, j)`` satisfies ``i < j``.  ``renumbering`` records the map
    from input ids to canonical ids applied by :func:`validate_dag`.
    """

    cards: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    renumbering: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.cards)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def _parents(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            out[j].append(i)
        return {v: tuple(sorted(ps)) for v, ps in out.items()}

    @cached_property
    def _children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            out[i].append(j)
        return {v: tuple(sorted(cs)) for v, cs in out.items()}

    def parents(self, j: int) -> tuple[int, ...]:
        return self._parents[j]

    def children(self, i: int) -> tuple[int, ...]:
        return self._children[i]

    @cached_property
    def sinks(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if not self._children[v])

    @cached_property
    def non_sinks(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self._children[v])

    def is_sink(self, v: int) -> bool:
        return not self._children[v]

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self._edge_set or (j, i) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def descendants(self, v: int) -> frozenset[int]:
        seen: set[int] = set()
        stack = list(self._children[v])
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(self._children[w])
        return frozenset(seen)

    def ancestors_of_set(self, vs) -> frozenset[int]:
        """All proper ancestors of any vertex in ``vs``."""
        seen: set[int] = set()
        stack = [p for v in vs for p in self._parents[v]]
        while stack:
            w = stack.pop()
            if w not in seen:
                seen.add(w)
                stack.extend(self._parents[w])
        return frozenset(seen)

    def induced(self, subset) -> "DagModel":
        """Induced sub-model on ``subset``, renumbered canonically."""
        keep = sorted(set(subset))
        self._check_vertices(keep)
        relabel = {v: k + 1 for k, v in enumerate(keep)}
        return DagModel(
            cards=tuple(self.cards[v - 1] for v in keep),
            edges=tuple(
                sorted((relabel[i], relabel[j]) for i, j in self.edges
                       if i in relabel and j in relabel)),
            renumbering=tuple(sorted(relabel.items())),
        )

    def _check_vertices(self, vs) -> None:
        for v in vs:
            if not (isinstance(v, int) and 1 <= v <= self.n):
                raise InputError(f"unknown vertex id: {v!r}")

    def to_raw(self) -> dict:
        """JSON-compatible description accepted by :func:`validate_dag`."""
        return {
            "variables": [{"id": v, "levels": self.cards[v - 1]}
                          for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class CiStatement:
    """A conditional independence statement ``A _||_ B | C``.

    The two sides are interchangeable; on construction the sides are
    swapped if needed so that ``a`` contains the largest vertex of
    ``a | b``, giving every statement one canonical form.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...] = ()

    def __post_init__(self):
        a = tuple(sorted(set(self.a)))
        b = tuple(sorted(set(self.b)))
        c = tuple(sorted(set(self.c)))
        if not a or not b:
            raise InputError("both sides of a CI statement must be nonempty")
        if set(a) & set(b) or set(a) & set(c) or set(b) & set(c):
            raise InputError("A, B, C must be pairwise disjoint")
        if max(b) > max(a):
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __str__(self) -> str:
        def side(vs):
            return str(vs[0]) if len(vs) == 1 else "{" + ",".join(map(str, vs)) + "}"

        text = f"{side(self.a)} _||_ {side(self.b)}"
        if self.c:
            text += " | {" + ",".join(map(str, self.c)) + "}"
        return text

    def to_json(self) -> dict:
        return {"A": list(self.a), "B": list(self.b), "C": list(self.c)}

    def sort_key(self):
        return (self.a, self.b, self.c)


def validate_dag(raw) -> DagModel:
    """Validate a vertex/edge description and renumber it canonically.

    Accepts either the JSON graph dict ``{"variables": [{"id", "levels"},
    ...], "edges": [[i, j], ...]}`` or an existing :class:`DagModel`.
    The renumbering assigns 1..n in topological order, always taking the
    smallest ready input id first, and is recorded on the result.
    """
    if isinstance(raw, DagModel):
        raw = raw.to_raw()
    if not isinstance(raw, dict):
        raise InputError("graph description must be a mapping")
    try:
        variables = list(raw["variables"])
        edges_in = [tuple(e) for e in raw.get("edges", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph description: {exc}") from exc

    cards_by_id: dict[int, int] = {}
    for entry in variables:
        try:
            vid, levels = int(entry["id"]), int(entry["levels"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed variable entry {entry!r}") from exc
        if vid <= 0:
            raise InputError(f"vertex ids must be positive, got {vid}")
        if vid in cards_by_id:
            raise InputError(f"duplicate vertex id {vid}")
        if levels < 2:
            raise InputError(f"vertex {vid} has fewer than 2 levels")
        cards_by_id[vid] = levels
    if not cards_by_id:
        raise InputError("graph has no vertices")

    seen_edges: set[tuple[int, int]] = set()
    succ: dict[int, list[int]] = {v: [] for v in cards_by_id}
    indeg: dict[int, int] = {v: 0 for v in cards_by_id}
    for e in edges_in:
        if len(e) != 2:
            raise InputError(f"malformed edge {e!r}")
        i, j = int(e[0]), int(e[1])
        if i not in cards_by_id or j not in cards_by_id:
            raise InputError(f"edge ({i}, {j}) mentions an unknown vertex")
        if i == j:
            raise InputError(f"cycle detected: self-loop at {i}")
        if (i, j) in seen_edges:
            raise InputError(f"duplicate edge ({i}, {j})")
        seen_edges.add((i, j))
        succ[i].append(j)
        indeg[j] += 1

    ready = [v for v in sorted(cards_by_id) if indeg[v] == 0]
    heapq.heapify(ready)
    relabel: dict[int, int] = {}
    while ready:
        v = heapq.heappop(ready)
        relabel[v] = len(relabel) + 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(relabel) != len(cards_by_id):
        raise InputError("cycle detected")

    order = sorted(cards_by_id, key=relabel.__getitem__)
    return DagModel(
        cards=tuple(cards_by_id[v] for v in order),
        edges=tuple(sorted((relabel[i], relabel[j]) for i, j in seen_edges)),
        renumbering=tuple(sorted(relabel.items())),
    )


def load_graph(path) -> DagModel:
    """Load and validate a graph from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return validate_dag(raw)


def is_perfect(dag: DagModel, subset=None) -> bool:
    """True iff inside ``subset`` every vertex's parents are pairwise adjacent.

    Adjacency ignores edge direction.  ``subset`` defaults to all
    vertices; both the vertex and its parents are restricted to it.
    """
    if subset is None:
        sub = set(dag.vertices)
    else:
        sub = set(subset)
        dag._check_vertices(sub)
    for v in sub:
        ps = [p for p in dag.parents(v) if p in sub]
        for p, q in itertools.combinations(ps, 2):
            if not dag.adjacent(p, q):
                return False
    return True


def toric_criterion(dag: DagModel) -> bool:
    """True iff the induced subgraph on the non-sinks is perfect."""
    return is_perfect(dag, dag.non_sinks)


def _validate_statement(dag: DagModel, stmt: CiStatement) -> None:
    dag._check_vertices(stmt.a + stmt.b + stmt.c)


def d_separated(dag: DagModel, stmt: CiStatement) -> bool:
    """Decide the trail-separation criterion by a reachability sweep.

    A trail is blocked at ``j`` either when ``j`` is a conditioning
    vertex and not a collider there, or when ``j`` is a collider with
    neither itself nor any descendant conditioned on.  The sweep
    propagates (vertex, direction) states; its output is checked against
    :func:`trail_separation_oracle` in the test suite.
    """
    _validate_statement(dag, stmt)
    a_set, b_set, c_set = set(stmt.a), set(stmt.b), set(stmt.c)
    anc_c = c_set | set(dag.ancestors_of_set(c_set))
    UP, DOWN = 0, 1
    stack = [(v, UP) for v in sorted(a_set)]
    seen: set[tuple[int, int]] = set()
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        v, direction = state
        if v in b_set:
            return False
        if direction == UP:
            if v not in c_set:
                for p in dag.parents(v):
                    stack.append((p, UP))
                for w in dag.children(v):
                    stack.append((w, DOWN))
        else:
            if v not in c_set:
                for w in dag.children(v):
                    stack.append((w, DOWN))
            if v in anc_c:
                for p in dag.parents(v):
                    stack.append((p, UP))
    return True


def _simple_trails(dag: DagModel, start: int, targets: set[int]):
    """Yield every simple undirected path from ``start`` into ``targets``."""
    neighbors = {v: tuple(sorted(set(dag.parents(v)) | set(dag.children(v))))
                 for v in dag.vertices}
    path = [start]
    on_path = {start}

    def walk():
        v = path[-1]
        for w in neighbors[v]:
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if w in targets:
                yield tuple(path)
            else:
                yield from walk()
            on_path.discard(w)
            path.pop()

    if start in targets:
        return
    yield from walk()


def trail_separation_oracle(dag: DagModel, stmt: CiStatement,
                            limits: Limits = DEFAULT_LIMITS) -> bool:
    """Exhaustive restatement of :func:`d_separated` over all simple trails.

    Guarded to small graphs; kept as the specification of correctness
    for the sweep.
    """
    _validate_statement(dag, stmt)
    if dag.n > limits.max_trail_n:
        raise GuardExceeded(
            f"trail oracle limited to n <= {limits.max_trail_n}, got {dag.n}")
    a_set, b_set, c_set = set(stmt.a), set(stmt.b), set(stmt.c)
    for a in sorted(a_set):
        for trail in _simple_trails(dag, a, b_set):
            blocked = False
            for k in range(1, len(trail) - 1):
                j = trail[k]
                collider = ((trail[k - 1], j) in dag._edge_set
                            and (trail[k + 1], j) in dag._edge_set)
                if collider:
                    if j not in c_set and not (dag.descendants(j) & c_set):
                        blocked = True
                        break
                elif j in c_set:
                    blocked = True
                    break
            if not blocked:
                return False
    return True


def ordered_markov(dag: DagModel) -> list[CiStatement]:
    """Per-vertex statements ``j _||_ predecessors \\ Pa(j) | Pa(j)``.

    Statements with an empty second side are omitted.
    """
    out = []
    for j in dag.vertices:
        pa = set(dag.parents(j))
        rest = tuple(v for v in range(1, j) if v not in pa)
        if rest:
            out.append(CiStatement((j,), rest, tuple(sorted(pa))))
    return out


@dataclass(frozen=True)
class MarkovProperty:
    """All valid statements of a model plus a dominance-reduced list."""

    full: tuple[CiStatement, ...]
    reduced: tuple[CiStatement, ...]


def global_markov(dag: DagModel, limits: Limits = DEFAULT_LIMITS) -> MarkovProperty:
    """Enumerate every valid conditional independence statement.

    Every assignment of vertices to A/B/C/none with A and B nonempty is
    filtered through :func:`d_separated`; symmetric duplicates collapse
    through the canonical form of :class:`CiStatement`.  The reduced
    list keeps only statements not dominated by a valid statement with
    strictly larger ``A | B`` and the same or smaller ``C``.
    """
    if dag.n > limits.max_n:
        raise GuardExceeded(
            f"statement enumeration limited to n <= {limits.max_n}, got {dag.n}")
    found: set[CiStatement] = set()
    verts = list(dag.vertices)
    for assignment in itertools.product((0, 1, 2, 3), repeat=dag.n):
        a = tuple(v for v, g in zip(verts, assignment) if g == 0)
        b = tuple(v for v, g in zip(verts, assignment) if g == 1)
        if not a or not b:
            continue
        c = tuple(v for v, g in zip(verts, assignment) if g == 2)
        stmt = CiStatement(a, b, c)
        if stmt in found:
            continue
        if d_separated(dag, stmt):
            found.add(stmt)
    full = tuple(sorted(found, key=CiStatement.sort_key))

    def dominated(t: CiStatement) -> bool:
        tu, tc = set(t.a) | set(t.b), set(t.c)
        for s in full:
            su = set(s.a) | set(s.b)
            if su > tu and set(s.c) <= tc:
                return True
        return False

    reduced = tuple(t for t in full if not dominated(t))
    return MarkovProperty(full=full, reduced=reduced)


def induced_cycles_gt3(dag: DagModel,
                       limits: Limits = DEFAULT_LIMITS) -> list[tuple[int, ...]]:
    """All vertex subsets whose induced subgraph is a cycle of length >= 4.

    The induced subgraph must consist of exactly two internally disjoint
    directed paths sharing start and end, with no further edges.
    """
    if dag.n > limits.max_subset_n:
        raise GuardExceeded(
            f"induced-cycle scan limited to n <= {limits.max_subset_n}, got {dag.n}")
    cycles = []
    verts = list(dag.vertices)
    for size in range(4, dag.n + 1):
        for subset in itertools.combinations(verts, size):
            inside = set(subset)
            sub_edges = [(i, j) for i, j in dag.edges if i in inside and j in inside]
            if len(sub_edges) != size:
                continue
            indeg = {v: 0 for v in subset}
            outdeg = {v: 0 for v in subset}
            for i, j in sub_edges:
                outdeg[i] += 1
                indeg[j] += 1
            starts = [v for v in subset if (indeg[v], outdeg[v]) == (0, 2)]
            ends = [v for v in subset if (indeg[v], outdeg[v]) == (2, 0)]
            mids = [v for v in subset if (indeg[v], outdeg[v]) == (1, 1)]
            if len(starts) != 1 or len(ends) != 1 or len(mids) != size - 2:
                continue
            adj: dict[int, list[int]] = {v: [] for v in subset}
            for i, j in sub_edges:
                adj[i].append(j)
                adj[j].append(i)
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                cycles.append(subset)
    return cycles
