"""The network's parametrization map and the algebra built on it.

The homogenized map sends the x variable of an outcome vector to the
product of the edge labels along the corresponding root-to-leaf path,
written in normal form (one label per stage eliminated against z).
On top of it sit exact kernel membership, conditional-independence
minors, graded kernel components by left null spaces of coefficient
matrices, marginalization maps, and the witness constructions for
relations that quadrics cannot generate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import kernels, linalg
from .dag import (DEFAULT_LIMITS, CiStatement, DagModel, Limits, d_separated,
                  global_markov, induced_cycles_gt3, toric_criterion)
from .errors import GuardExceeded, InputError, PreconditionError
from .poly import (THETA_RING, X_RING, Poly, QuotientContext, Z, expand_plus,
                   label_var, mono_mul, x_variable)


@lru_cache(maxsize=None)
def quotient_context(dag: DagModel) -> QuotientContext:
    """One stage per (vertex, parent values) pair, labels in level order."""
    stages = []
    for j in dag.vertices:
        pa = dag.parents(j)
        for pa_values in itertools.product(
                *(range(1, dag.cards[p - 1] + 1) for p in pa)):
            stages.append(tuple(label_var(j, pa_values, k)
                                for k in range(1, dag.cards[j - 1] + 1)))
    return QuotientContext(tuple(stages))


@lru_cache(maxsize=None)
def basic_indices(dag: DagModel) -> tuple:
    """All outcome vectors, lexicographically sorted."""
    return tuple(itertools.product(*(range(1, k + 1) for k in dag.cards)))


@lru_cache(maxsize=None)
def _leaf_images(dag: DagModel) -> dict:
    """Normal-form image of every basic x variable.

    The factor for vertex j is the label of value u_j given the parent
    values, except that the last level of each stage is replaced by
    z minus the other labels of the stage, so images never contain an
    eliminated label.
    """
    zvar = Poly.variable(THETA_RING, Z)
    images = {}
    for u in basic_indices(dag):
        img = Poly.const(THETA_RING, 1)
        for j in dag.vertices:
            pa_values = tuple(u[p - 1] for p in dag.parents(j))
            card = dag.cards[j - 1]
            if u[j - 1] < card:
                factor = Poly.variable(THETA_RING,
                                       label_var(j, pa_values, u[j - 1]))
            else:
                factor = zvar
                for k in range(1, card):
                    factor = factor - Poly.variable(
                        THETA_RING, label_var(j, pa_values, k))
            img = img * factor
        images[u] = img
    return images


def expand_poly(dag: DagModel, f: Poly) -> Poly:
    """Rewrite every summed (``+``) variable as its sum of basic ones."""
    plus_vars = {v for v in f.variables() if 0 in v}
    if not plus_vars:
        return f
    return f.substitute_vars({v: expand_plus(dag, v) for v in plus_vars})


def phi_bar(dag: DagModel, f: Poly) -> Poly:
    """Image of an x polynomial under the parametrization, in normal form."""
    if f.ring is not X_RING:
        raise InputError("the parametrization applies to x polynomials")
    f = expand_poly(dag, f)
    images = _leaf_images(dag)
    out = Poly.zero(THETA_RING)
    for mono, coeff in f.terms.items():
        term = Poly.const(THETA_RING, coeff)
        for var, e in mono:
            img = images.get(var)
            if img is None:
                raise InputError(
                    f"index {X_RING.var_str(var)} invalid for this model")
            term = term * img ** e
        out = out + term
    return out


def in_kernel(dag: DagModel, f: Poly) -> bool:
    """Exact membership in the kernel of the parametrization."""
    return phi_bar(dag, f).is_zero()


# ---------------------------------------------------------------------------
# Conditional independence minors.

def ci_generators(dag: DagModel, stmt: CiStatement) -> list[Poly]:
    """All 2x2 minors of the flattened contingency matrices of a statement.

    Rows are value vectors of the first side, columns of the second,
    one matrix per value vector of the conditioning set; coordinates
    outside the statement are filled with ``+``.  Generation is
    syntactic: the statement need not hold.
    """
    dag._check_vertices(stmt.a + stmt.b + stmt.c)

    def values(side):
        return list(itertools.product(
            *(range(1, dag.cards[v - 1] + 1) for v in side)))

    def vec(avals, bvals, cvals):
        out = [0] * dag.n
        for v, value in zip(stmt.a, avals):
            out[v - 1] = value
        for v, value in zip(stmt.b, bvals):
            out[v - 1] = value
        for v, value in zip(stmt.c, cvals):
            out[v - 1] = value
        return tuple(out)

    gens = []
    for cvals in values(stmt.c):
        rows = values(stmt.a)
        cols = values(stmt.b)
        for a1, a2 in itertools.combinations(rows, 2):
            for b1, b2 in itertools.combinations(cols, 2):
                gens.append(
                    x_variable(vec(a1, b1, cvals)) * x_variable(vec(a2, b2, cvals))
                    - x_variable(vec(a2, b1, cvals)) * x_variable(vec(a1, b2, cvals)))
    return gens


# ---------------------------------------------------------------------------
# Graded components by exact linear algebra.

@dataclass(frozen=True)
class GradedBasis:
    """A basis of homogeneous degree-d polynomials (exact, independent)."""

    degree: int
    polys: tuple

    @property
    def dim(self) -> int:
        return len(self.polys)


def _graded_monomials(variables, degree: int, limits: Limits):
    count = comb(len(variables) + degree - 1, degree) if variables else 0
    if count > limits.max_monomials:
        raise GuardExceeded(
            f"{count} degree-{degree} monomials exceed the bound "
            f"{limits.max_monomials}")
    return [
        tuple((v, len(list(group))) for v, group in itertools.groupby(combo))
        for combo in itertools.combinations_with_replacement(variables, degree)
    ]


@lru_cache(maxsize=None)
def plus_indices(dag: DagModel) -> tuple:
    """The summed-variable basis: sinks at their last level become ``+``."""
    sinks = set(dag.sinks)
    out = []
    for u in basic_indices(dag):
        out.append(tuple(
            0 if (i + 1 in sinks and v == dag.cards[i]) else v
            for i, v in enumerate(u)))
    assert len(set(out)) == len(out)
    return tuple(sorted(out))


def plus_monomial(dag: DagModel, index) -> tuple:
    """Label-monomial image of a summed-basis element.

    Every ``+`` coordinate contributes a factor z; other coordinates
    contribute their edge label over the full label alphabet (no
    elimination), which is what makes the image a genuine monomial.
    """
    exps: dict = {}
    for j, v in enumerate(index, start=1):
        if v == 0:
            exps[Z] = exps.get(Z, 0) + 1
        else:
            pa_values = tuple(index[p - 1] for p in dag.parents(j))
            if 0 in pa_values:
                raise InputError("summed coordinate used as a parent value")
            key = label_var(j, pa_values, v)
            exps[key] = exps.get(key, 0) + 1
    return tuple(sorted(exps.items()))


def standard_monomial(dag: DagModel, index) -> tuple:
    """Label-monomial image of a basic x variable over the full alphabet."""
    exps: dict = {}
    for j, v in enumerate(index, start=1):
        pa_values = tuple(index[p - 1] for p in dag.parents(j))
        key = label_var(j, pa_values, v)
        exps[key] = exps.get(key, 0) + 1
    return tuple(sorted(exps.items()))


def _kernel_from_rows(rows, monos, degree: int) -> GradedBasis:
    combos = linalg.left_nullspace(rows)
    polys = []
    for combo in combos:
        terms = {monos[i]: Fraction(c) for i, c in combo.items()}
        polys.append(Poly(X_RING, terms))
    return GradedBasis(degree, tuple(polys))


def graded_kernel(dag: DagModel, degree: int, basis: str = "standard",
                  limits: Limits = DEFAULT_LIMITS) -> GradedBasis:
    """Exact basis of the homogeneous degree-d part of the kernel.

    In standard coordinates the coefficient matrix of the normal-form
    images is assembled over the free labels and its left null space is
    extracted by fraction-free elimination.  In the summed basis
    (requires the non-sink perfectness criterion) every monomial maps
    to a single label monomial, so the same elimination degenerates
    into grouping monomials by image; dimensions agree between the two
    coordinate systems.
    """
    if degree < 0:
        raise InputError("degree must be nonnegative")
    if basis == "standard":
        variables = basic_indices(dag)
        monos = _graded_monomials(variables, degree, limits)
        images = _leaf_images(dag)
        cache: dict = {(): Poly.const(THETA_RING, 1)}

        def image_of(mono):
            if mono not in cache:
                head = mono[:-1] if mono[-1][1] == 1 else (
                    mono[:-1] + ((mono[-1][0], mono[-1][1] - 1),))
                cache[mono] = image_of(head) * images[mono[-1][0]]
            return cache[mono]

        row_polys = [image_of(m) for m in monos]
        col_index: dict = {}
        for p in row_polys:
            for m in sorted(p.terms):
                if m not in col_index:
                    col_index[m] = len(col_index)
        rows = [{col_index[m]: c for m, c in p.terms.items()}
                for p in row_polys]
        return _kernel_from_rows(rows, monos, degree)
    if basis == "plus":
        if not toric_criterion(dag):
            raise PreconditionError(
                "summed basis requires the induced subgraph on non-sinks "
                "to be perfect")
        variables = plus_indices(dag)
        monos = _graded_monomials(variables, degree, limits)
        var_image = {v: plus_monomial(dag, v) for v in variables}
        col_index: dict = {}
        rows = []
        for mono in monos:
            image = ()
            for v, e in mono:
                for _ in range(e):
                    image = mono_mul(image, var_image[v])
            col = col_index.setdefault(image, len(col_index))
            rows.append({col: 1})
        return _kernel_from_rows(rows, monos, degree)
    raise InputError(f"unknown basis {basis!r}")


@dataclass
class ComponentSpan:
    """The degree-d slice of the ideal generated by homogeneous forms.

    Provides the exact dimension and a membership test; a materialized
    basis is available through :meth:`to_graded_basis`.
    """

    degree: int
    _col_index: dict
    _ech: kernels.EchelonResult

    @property
    def dim(self) -> int:
        return self._ech.rank

    def contains(self, f: Poly) -> bool:
        if f.is_zero():
            return True
        hdeg = f.homogeneous_degree()
        if hdeg != self.degree:
            raise InputError(
                f"membership query of degree {hdeg} against a degree-"
                f"{self.degree} component")
        row = {}
        for mono, coeff in f.terms.items():
            col = self._col_index.get(mono)
            if col is None:
                return False
            row[col] = coeff
        return linalg.in_span(self._ech, row)

    def to_graded_basis(self) -> GradedBasis:
        back = {i: m for m, i in self._col_index.items()}
        polys = []
        for row in self._ech.rows:
            polys.append(Poly(X_RING,
                              {back[c]: Fraction(v) for c, v in row}))
        return GradedBasis(self.degree, tuple(polys))


def degree_component_of_ideal(gens, degree: int, variables=None,
                              limits: Limits = DEFAULT_LIMITS) -> ComponentSpan:
    """Span of all monomial multiples m*g of degree ``degree``.

    ``variables`` fixes the ambient variable set for the multiplier
    monomials; by default it is the union of the generators' supports.
    """
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.ring is not X_RING:
            raise InputError("generators must be x polynomials")
        if g.homogeneous_degree() is None:
            raise InputError("generators must be homogeneous")
    if variables is None:
        variables = sorted({v for g in gens for v in g.variables()})
    else:
        variables = sorted(variables)
    col_index: dict = {}
    rows = []
    for g in gens:
        shift = degree - g.homogeneous_degree()
        if shift < 0:
            continue
        for mult in _graded_monomials(variables, shift, limits):
            row = {}
            for mono, coeff in g.terms.items():
                m = mono_mul(mono, mult)
                col = col_index.setdefault(m, len(col_index))
                row[col] = coeff
            rows.append(row)
    ech = linalg.span_echelon(rows)
    return ComponentSpan(degree, col_index, ech)


# ---------------------------------------------------------------------------
# Independence ideal of the whole model.

@dataclass(frozen=True)
class GlobalGenerators:
    """Quadric generators of the model's independence ideal.

    ``raw`` lists every minor of every valid statement (the defining,
    redundant family); ``reduced`` is an echelon basis of their span in
    the basic coordinates.
    """

    statements: tuple
    by_statement: tuple
    raw: tuple
    reduced: GradedBasis


def degree2_monomials(dag: DagModel, limits: Limits = DEFAULT_LIMITS):
    return _graded_monomials(basic_indices(dag), 2, limits)


def _degree2_row(dag: DagModel, f: Poly, col_index: dict) -> dict:
    expanded = expand_poly(dag, f)
    if expanded.is_zero():
        return {}
    if expanded.homogeneous_degree() != 2:
        raise InputError("expected a homogeneous quadric")
    return {col_index[m]: c for m, c in expanded.terms.items()}


def global_generators(dag: DagModel,
                      limits: Limits = DEFAULT_LIMITS) -> GlobalGenerators:
    markov = global_markov(dag, limits)
    by_statement = []
    raw = []
    for stmt in markov.full:
        gens = tuple(ci_generators(dag, stmt))
        by_statement.append((stmt, gens))
        raw.extend(gens)
    monos = degree2_monomials(dag, limits)
    col_index = {m: i for i, m in enumerate(monos)}
    rows = [_degree2_row(dag, g, col_index) for g in raw]
    ech = linalg.span_echelon(rows)
    back = {i: m for m, i in col_index.items()}
    polys = tuple(
        Poly(X_RING, {back[c]: Fraction(v) for c, v in row})
        for row in ech.rows)
    return GlobalGenerators(
        statements=markov.full,
        by_statement=tuple(by_statement),
        raw=tuple(raw),
        reduced=GradedBasis(2, polys),
    )


def degree2_span_check(dag: DagModel,
                       limits: Limits = DEFAULT_LIMITS) -> dict:
    """Compare the independence quadrics with the degree-2 kernel.

    Both spans are expressed over the same degree-2 monomial basis and
    compared through the exact rank of the stacked matrix.
    """
    kernel2 = graded_kernel(dag, 2, "standard", limits)
    gg = global_generators(dag, limits)
    monos = degree2_monomials(dag, limits)
    col_index = {m: i for i, m in enumerate(monos)}
    kernel_rows = [_degree2_row(dag, p, col_index) for p in kernel2.polys]
    ci_rows = [_degree2_row(dag, p, col_index) for p in gg.reduced.polys]
    stacked = linalg.span_dim(kernel_rows + ci_rows)
    equal = stacked == kernel2.dim == gg.reduced.dim
    return {
        "degree": 2,
        "kernel_dim": kernel2.dim,
        "ci_dim": gg.reduced.dim,
        "stacked_dim": stacked,
        "equal": equal,
    }


# ---------------------------------------------------------------------------
# Marginalization maps for the last vertex.

def _check_last_sink(dag: DagModel) -> None:
    if not dag.is_sink(dag.n):
        raise PreconditionError(f"vertex {dag.n} is not a sink")


def marginal_embedding(dag: DagModel, f: Poly) -> Poly:
    """Embed a polynomial over the first n-1 vertices by appending ``+``.

    Each variable gains a trailing summed coordinate which is then
    expanded, so the result lives in the basic coordinates of the full
    model.
    """
    _check_last_sink(dag)
    if f.ring is not X_RING:
        raise InputError("expected an x polynomial")
    mapping = {}
    for v in f.variables():
        if len(v) != dag.n - 1:
            raise InputError(
                f"variable {X_RING.var_str(v)} does not index the first "
                f"{dag.n - 1} vertices")
        mapping[v] = expand_plus(dag, v + (0,))
    return f.substitute_vars(mapping)


def rho_projection(dag: DagModel, rho: dict, f: Poly) -> Poly:
    """Project onto the first n-1 vertices using exact label values.

    A basic variable loses its last coordinate and is scaled by the
    value of the corresponding last-vertex label; ``rho`` must sum to
    exactly 1 on every stage of the last vertex.
    """
    _check_last_sink(dag)
    n = dag.n
    pa = dag.parents(n)
    card = dag.cards[n - 1]
    for pa_values in itertools.product(
            *(range(1, dag.cards[p - 1] + 1) for p in pa)):
        total = Fraction(0)
        for k in range(1, card + 1):
            key = label_var(n, pa_values, k)
            if key not in rho:
                raise InputError(
                    f"no value for label {THETA_RING.var_str(key)}")
            total += Fraction(rho[key])
        if total != 1:
            raise InputError(
                f"label values sum to {total} != 1 on stage {pa_values}")
    f = expand_poly(dag, f)
    out: dict = {}
    for mono, coeff in f.terms.items():
        scale = Fraction(1)
        parts = ()
        for v, e in mono:
            if len(v) != n:
                raise InputError(
                    f"variable {X_RING.var_str(v)} does not index "
                    f"{n} vertices")
            pa_values = tuple(v[p - 1] for p in pa)
            scale *= Fraction(rho[label_var(n, pa_values, v[n - 1])]) ** e
            parts = mono_mul(parts, ((v[:-1], e),))
        value = out.get(parts, Fraction(0)) + coeff * scale
        if value:
            out[parts] = value
        elif parts in out:
            del out[parts]
    return Poly(X_RING, out)


# ---------------------------------------------------------------------------
# Witness constructions.

@dataclass
class WitnessReport:
    """A kernel element together with its membership-gap certificate."""

    kind: str
    model: DagModel
    poly: Poly
    in_kernel: bool
    outside_component: bool
    component_degree: int
    component_dim: int
    kernel_dim: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def certificate_ok(self) -> bool:
        ok = self.in_kernel and self.outside_component
        if self.kernel_dim is not None:
            ok = ok and self.kernel_dim > self.component_dim
        return ok

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "witness": self.poly.to_json(),
            "in_kernel": self.in_kernel,
            "outside_component": self.outside_component,
            "component_degree": self.component_degree,
            "component_dim": self.component_dim,
            "certificate_ok": self.certificate_ok,
        }
        if self.kernel_dim is not None:
            out["kernel_dim"] = self.kernel_dim
        out.update(self.details)
        return out


def _undirected_neighbors(dag: DagModel, v: int) -> set:
    return set(dag.parents(v)) | set(dag.children(v))


def _connected(dag: DagModel, vertices) -> bool:
    vertices = set(vertices)
    if not vertices:
        return True
    start = min(vertices)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in _undirected_neighbors(dag, v) & vertices:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def _trail_interior(dag: DagModel, k1: int, k2: int, avoid: set) -> set:
    """Vertices strictly inside some simple undirected k1-k2 path."""
    neighbors = {v: sorted(_undirected_neighbors(dag, v) - avoid)
                 for v in dag.vertices if v not in avoid}
    interior: set = set()
    path = [k1]
    on_path = {k1}

    def walk():
        for w in neighbors[path[-1]]:
            if w in on_path:
                continue
            if w == k2:
                interior.update(path[1:])
                continue
            path.append(w)
            on_path.add(w)
            walk()
            on_path.discard(w)
            path.pop()

    walk()
    return interior


def _sink_reduction(dag: DagModel, limits: Limits):
    """Drop sinks until the chosen long induced cycle ends at vertex n."""
    cycles = induced_cycles_gt3(dag, limits)
    if not cycles:
        raise PreconditionError("the model has no induced cycle of length > 3")
    cycle = set(cycles[0])
    current = dag
    while True:
        indeg2 = [v for v in sorted(cycle)
                  if len([p for p in current.parents(v) if p in cycle]) == 2]
        endpoint = indeg2[0]
        extra_sinks = [s for s in current.sinks if s != endpoint]
        if not extra_sinks:
            break
        drop = extra_sinks[-1]
        keep = [v for v in current.vertices if v != drop]
        relabel = {v: k + 1 for k, v in enumerate(keep)}
        current = current.induced(keep)
        cycle = {relabel[v] for v in cycle}
    if current.sinks != (current.n,):
        raise PreconditionError("sink reduction did not leave a unique sink")
    return current, tuple(sorted(cycle))


def _witness_sets(dag: DagModel, k1: int, k2: int):
    """The proof-procedure separation sets around the two cycle parents."""
    n = dag.n
    c_set = _trail_interior(dag, k1, k2, {n})
    others = set(range(1, n)) - c_set

    def component(start):
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in _undirected_neighbors(dag, v) & others:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    a_set = component(k1)
    b_set = component(k2)
    c_set = set(range(1, n)) - a_set - b_set
    moved = True
    while moved:
        moved = False
        for i in sorted(c_set):
            nb = _undirected_neighbors(dag, i)
            if nb & a_set and not nb & b_set:
                c_set.discard(i)
                a_set.add(i)
                moved = True
            elif nb & b_set and not nb & a_set:
                c_set.discard(i)
                b_set.add(i)
                moved = True
    return a_set, b_set, c_set


def degree4_witness(dag: DagModel,
                    limits: Limits = DEFAULT_LIMITS) -> WitnessReport:
    """A degree-4 kernel binomial outside the span of quadric multiples.

    Requires the non-sink perfectness criterion and an induced cycle of
    length greater than three.  Sinks other than the cycle endpoint are
    marginalized away first; the witness and its certificate refer to
    the reduced model, which is reported alongside.
    """
    if not toric_criterion(dag):
        raise PreconditionError(
            "the induced subgraph on non-sinks is not perfect")
    reduced, cycle = _sink_reduction(dag, limits)
    n = reduced.n
    cycle_parents = sorted(p for p in reduced.parents(n) if p in cycle)
    if len(cycle_parents) != 2:
        raise PreconditionError("cycle endpoint does not have two cycle parents")
    k1, k2 = cycle_parents
    a_set, b_set, c_set = _witness_sets(reduced, k1, k2)

    if not d_separated(reduced, CiStatement(tuple(a_set), tuple(b_set),
                                            tuple(c_set))):
        raise PreconditionError("construction failure: the two sides are "
                                "not separated by the middle set")
    if a_set | b_set | c_set != set(range(1, n)):
        raise PreconditionError("construction failure: the three sets do "
                                "not cover the non-sink vertices")
    if k1 not in a_set or not _connected(reduced, a_set):
        raise PreconditionError("construction failure: first side is not "
                                "connected around its cycle parent")
    if k2 not in b_set or not _connected(reduced, b_set):
        raise PreconditionError("construction failure: second side is not "
                                "connected around its cycle parent")
    pa_n = set(reduced.parents(n))
    for i in sorted(c_set):
        nb = _undirected_neighbors(reduced, i)
        if not (nb & a_set) or not (nb & b_set):
            raise PreconditionError("construction failure: a middle vertex "
                                    "has no neighbor on both sides")
    if c_set <= pa_n:
        raise PreconditionError("construction failure: the middle set lies "
                                "inside the parents of the sink")

    def assemble(a_value, b_value, c_flip):
        out = [0] * n
        for v in a_set:
            out[v - 1] = a_value
        for v in b_set:
            out[v - 1] = b_value
        for v in c_set:
            out[v - 1] = 1 if (v in pa_n or not c_flip) else 2
        out[n - 1] = 1
        return tuple(out)

    plus_terms = [assemble(1, 1, False), assemble(2, 2, False),
                  assemble(2, 1, True), assemble(1, 2, True)]
    minus_terms = [assemble(2, 1, False), assemble(1, 2, False),
                   assemble(1, 1, True), assemble(2, 2, True)]
    witness = Poly.const(X_RING, 1)
    for v in plus_terms:
        witness = witness * x_variable(v)
    negative = Poly.const(X_RING, 1)
    for v in minus_terms:
        negative = negative * x_variable(v)
    witness = witness - negative

    kernel2 = graded_kernel(reduced, 2, "plus", limits)
    component = degree_component_of_ideal(
        kernel2.polys, 4, variables=plus_indices(reduced), limits=limits)
    kernel4 = graded_kernel(reduced, 4, "plus", limits)
    return WitnessReport(
        kind="deg4",
        model=reduced,
        poly=witness,
        in_kernel=in_kernel(reduced, witness),
        outside_component=not component.contains(witness),
        component_degree=4,
        component_dim=component.dim,
        kernel_dim=kernel4.dim,
        details={
            "cycle": list(cycle),
            "sides": {"A": sorted(a_set), "B": sorted(b_set),
                      "C": sorted(c_set)},
            "reduced_n": n,
        },
    )


_DETM_EDGES = ((1, 3), (2, 3), (3, 4))
_DETM_CARDS = (3, 2, 2, 2)


def detm_witness(dag: DagModel,
                 limits: Limits = DEFAULT_LIMITS) -> WitnessReport:
    """The cubic witness for the join-fork model with a ternary root.

    A 3x3 matrix is built whose lower two rows define the root
    independence minors; its determinant is rewritten term by term,
    fixing the last coordinate of one factor per third-coordinate
    value, into a cubic that the parametrization kills but the
    independence quadrics cannot generate.
    """
    if dag.edges != _DETM_EDGES or dag.cards != _DETM_CARDS:
        raise PreconditionError(
            "shape mismatch: expected edges 1->3, 2->3, 3->4 with levels "
            "(3, 2, 2, 2)")

    def entry(i, row):
        if row == 0:
            return x_variable((i, 1, 1, 0))
        if row == 1:
            return x_variable((i, 1, 1, 0)) + x_variable((i, 1, 2, 0))
        return x_variable((i, 2, 1, 0)) + x_variable((i, 2, 2, 0))

    matrix = [[entry(i, row) for i in (1, 2, 3)] for row in range(3)]
    det = Poly.zero(X_RING)
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((2, 1, 0), -1), ((1, 0, 2), -1), ((0, 2, 1), -1)):
        term = Poly.const(X_RING, sign)
        for col, row in enumerate(perm):
            term = term * matrix[row][col]
        det = det + term

    witness = Poly.zero(X_RING)
    for mono, coeff in det.terms.items():
        factors = [v for v, e in mono for _ in range(e)]
        ones = sorted(v for v in factors if v[2] == 1)
        twos = sorted(v for v in factors if v[2] == 2)
        if not ones or not twos:
            raise PreconditionError(
                "determinant expansion left a term without both third-"
                "coordinate values")
        factors.remove(ones[0])
        factors.remove(twos[0])
        factors.append(ones[0][:3] + (1,))
        factors.append(twos[0][:3] + (1,))
        new_mono = ()
        for v in sorted(factors):
            new_mono = mono_mul(new_mono, ((v, 1),))
        witness = witness + Poly(X_RING, {new_mono: coeff})

    gg = global_generators(dag, limits)
    component = degree_component_of_ideal(
        gg.reduced.polys, 3, variables=basic_indices(dag), limits=limits)
    return WitnessReport(
        kind="detM",
        model=dag,
        poly=witness,
        in_kernel=in_kernel(dag, witness),
        outside_component=not component.contains(expand_poly(dag, witness)),
        component_degree=3,
        component_dim=component.dim,
        details={"ci_dim": gg.reduced.dim},
    )
