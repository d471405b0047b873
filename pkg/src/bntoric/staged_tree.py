"""Leveled event trees with labelled edges and stage structure.

The tree of a network has one level per random variable: a vertex on
level j is the outcome prefix (v_1, ..., v_j), and its outgoing edges
carry the labels theta(X_{j+1} = k | parent values).  Two vertices on a
level share a stage exactly when they agree on the parents of the next
variable.  Generic trees (any children/label maps over hashable,
sortable vertices) are accepted by the structural checks so that
externally supplied trees can be validated too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .dag import DagModel
from .errors import InputError
from .poly import THETA_RING, Poly, label_var


@dataclass(frozen=True)
class StagedTree:
    """A rooted tree with edge labels.

    ``children`` maps each vertex to an ordered tuple of children and
    ``labels`` maps each (parent, child) edge to its label key.  All
    derived structure (levels, stages, label sets) is computed lazily.
    """

    root: tuple
    children: tuple  # tuple of (vertex, tuple-of-children) pairs
    labels: tuple    # tuple of ((parent, child), label) pairs

    @classmethod
    def from_maps(cls, children: dict, labels: dict, root=()) -> "StagedTree":
        return cls(
            root=root,
            children=tuple(sorted((v, tuple(cs)) for v, cs in children.items())),
            labels=tuple(sorted(labels.items())),
        )

    @cached_property
    def child_map(self) -> dict:
        return dict(self.children)

    @cached_property
    def label_map(self) -> dict:
        return dict(self.labels)

    @cached_property
    def parent_map(self) -> dict:
        out = {}
        for v, cs in self.children:
            for w in cs:
                out[w] = v
        return out

    @cached_property
    def levels(self) -> tuple:
        """Vertices grouped by distance from the root, each level sorted."""
        out = [[self.root]]
        while True:
            nxt = []
            for v in out[-1]:
                nxt.extend(self.child_map.get(v, ()))
            if not nxt:
                break
            out.append(sorted(nxt))
        return tuple(tuple(level) for level in out)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @cached_property
    def leaves(self) -> tuple:
        return tuple(v for level in self.levels for v in level
                     if not self.child_map.get(v, ()))

    def label_set(self, v) -> frozenset:
        return frozenset(self.label_map[(v, w)]
                         for w in self.child_map.get(v, ()))

    def stages_at_level(self, level: int) -> tuple:
        """Partition of a level into stages (vertices with equal label sets)."""
        groups: dict[frozenset, list] = {}
        for v in self.levels[level]:
            groups.setdefault(self.label_set(v), []).append(v)
        return tuple(tuple(sorted(g)) for g in
                     sorted(groups.values(), key=lambda g: sorted(g)[0]))

    def subtree_vertices(self, v) -> list:
        out = [v]
        stack = [v]
        while stack:
            w = stack.pop()
            for u in self.child_map.get(w, ()):
                out.append(u)
                stack.append(u)
        return out

    def to_json(self) -> dict:
        def name(v):
            return "".join(str(x) for x in v) if v else "root"

        stage_partition = {
            str(level): [[name(v) for v in stage]
                         for stage in self.stages_at_level(level)]
            for level in range(self.depth)
        }
        return {
            "vertices": [name(v) for level in self.levels for v in level],
            "edges": [{"from": name(v), "to": name(w),
                       "label": THETA_RING.var_str(lab)}
                      for (v, w), lab in self.labels],
            "stages": stage_partition,
        }

    def to_dot(self) -> str:
        def name(v):
            return '"%s"' % ("".join(str(x) for x in v) if v else "root")

        lines = ["digraph tree {", "  rankdir=LR;"]
        for (v, w), lab in self.labels:
            lines.append(
                f"  {name(v)} -> {name(w)} "
                f"[label=\"{THETA_RING.var_str(lab)}\"];")
        lines.append("}")
        return "\n".join(lines)


def build_staged_tree(dag: DagModel) -> StagedTree:
    """The leveled tree of a network, labels keyed by parent context.

    A vertex on level j-1 has one outgoing edge per level of X_j,
    labelled ``("t", j, parent values, k)``; vertices sharing parent
    values of X_j automatically share their label set, which realizes
    the stage structure.
    """
    children: dict[tuple, tuple] = {}
    labels: dict[tuple, tuple] = {}
    level = [()]
    for j in range(1, dag.n + 1):
        pa = dag.parents(j)
        nxt = []
        for prefix in level:
            pa_values = tuple(prefix[p - 1] for p in pa)
            kids = tuple(prefix + (k,) for k in range(1, dag.cards[j - 1] + 1))
            children[prefix] = kids
            for k, kid in enumerate(kids, start=1):
                labels[(prefix, kid)] = label_var(j, pa_values, k)
            nxt.extend(kids)
        level = nxt
    for leaf in level:
        children[leaf] = ()
    return StagedTree.from_maps(children, labels)


def check_stage_axioms(tree: StagedTree) -> bool:
    """Both labelling axioms plus stratification.

    Edges out of one vertex must carry distinct labels, two label sets
    must be equal or disjoint, same-stage vertices must share a level,
    and all leaves must sit on the last level.
    """
    label_owner: dict = {}
    set_level: dict[frozenset, int] = {}
    for level_index, level in enumerate(tree.levels):
        for v in level:
            kids = tree.child_map.get(v, ())
            if not kids:
                if level_index != tree.depth:
                    return False
                continue
            lset = tree.label_set(v)
            if len(lset) != len(kids):
                return False
            known = set_level.get(lset)
            if known is not None and known != level_index:
                return False
            set_level[lset] = level_index
            for lab in lset:
                owner = label_owner.get(lab)
                if owner is None:
                    label_owner[lab] = lset
                elif owner != lset:
                    return False
    return True


def check_cut_condition(tree: StagedTree, level: int) -> bool:
    """True iff below every level-``level`` vertex each level is one stage.

    Equivalently: for any vertex u on the given level and any two
    vertices of the subtree of u on a common level, the two are in the
    same stage.
    """
    if not (0 <= level <= tree.depth):
        raise InputError(f"level {level} out of range 0..{tree.depth}")
    depth_of = {v: d for d, lv in enumerate(tree.levels) for v in lv}
    for u in tree.levels[level]:
        by_level: dict[int, set] = {}
        for w in tree.subtree_vertices(u):
            by_level.setdefault(depth_of[w], set()).add(tree.label_set(w))
        for sets in by_level.values():
            if len(sets) > 1:
                return False
    return True


def leaf_monomial(tree: StagedTree, leaf) -> Poly:
    """Product of the edge labels along the root-to-leaf path."""
    if tree.child_map.get(leaf, ()):
        raise InputError(f"{leaf!r} is not a leaf")
    exponents: dict = {}
    v = leaf
    while v != tree.root:
        p = tree.parent_map[v]
        lab = tree.label_map[(p, v)]
        exponents[lab] = exponents.get(lab, 0) + 1
        v = p
    return Poly.monomial(THETA_RING, exponents)


def validate_assignment(tree: StagedTree, rho: dict) -> None:
    """Check that label values lie in (0,1) and sum to 1 on every stage."""
    for level in range(tree.depth):
        for stage in tree.stages_at_level(level):
            rep = stage[0]
            total = Fraction(0)
            for w in tree.child_map[rep]:
                lab = tree.label_map[(rep, w)]
                if lab not in rho:
                    raise InputError(
                        f"no value for label {THETA_RING.var_str(lab)}")
                value = Fraction(rho[lab])
                if not 0 < value < 1:
                    raise InputError(
                        f"label value {value} outside (0,1)")
                total += value
            if total != 1:
                raise InputError(
                    f"stage of {rep!r} sums to {total}, expected 1")


def random_assignment(dag: DagModel, rng) -> dict:
    """Exact rational label values summing to 1 on every stage."""
    tree = build_staged_tree(dag)
    rho: dict = {}
    for level in range(tree.depth):
        for stage in tree.stages_at_level(level):
            rep = stage[0]
            kids = tree.child_map[rep]
            weights = [rng.randint(1, 19) for _ in kids]
            total = sum(weights)
            for w, weight in zip(kids, weights):
                rho[tree.label_map[(rep, w)]] = Fraction(weight, total)
    return rho
