"""Monomial parametrizations, fiber binomials, and rank certificates.

When the induced subgraph on the non-sinks is perfect, replacing each
sink's last level by a marginal sum turns the parametrization into a
monomial map over the full label alphabet; the kernel is then spanned
in every degree by differences of equal-image monomials.  Quadratic
forms are certified through the rank of their symmetric coefficient
matrix, including one-parameter pencils f + c*g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .dag import DEFAULT_LIMITS, DagModel, Limits, toric_criterion
from .errors import GuardExceeded, InputError, PreconditionError
from .ideal import (_graded_monomials, expand_poly, graded_kernel, in_kernel,
                    phi_bar, plus_indices, plus_monomial, quotient_context,
                    standard_monomial)
from .poly import (THETA_RING, X_RING, Poly, expand_plus, mono_mul,
                   normal_form)


def display_key(index):
    """Sort key putting summed coordinates after the basic levels."""
    return tuple(10 ** 6 if v == 0 else v for v in index)


@dataclass(frozen=True)
class MonomialParam:
    """Invertible linear change of x coordinates with monomial images."""

    pairs: tuple  # ((index, Poly monomial), ...) sorted for display

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"basis": [
            {"element": X_RING.var_str(idx), "image": str(image)}
            for idx, image in self.pairs]}

    def to_text(self) -> str:
        width = max(len(X_RING.var_str(idx)) for idx, _ in self.pairs)
        return "\n".join(
            f"{X_RING.var_str(idx):<{width}}  ->  {image}"
            for idx, image in self.pairs)


def plus_basis(dag: DagModel) -> MonomialParam:
    """The summed basis together with its label-monomial images.

    Each image is checked against the honest route: its normal form
    must equal the image of the expanded sum of basic variables under
    the parametrization.
    """
    if not toric_criterion(dag):
        raise PreconditionError(
            "monomial parametrization requires the induced subgraph on "
            "non-sinks to be perfect")
    ctx = quotient_context(dag)
    pairs = []
    for index in sorted(plus_indices(dag), key=display_key):
        image = Poly(THETA_RING,
                     {plus_monomial(dag, index): Fraction(1)})
        if normal_form(ctx, image) != phi_bar(dag, expand_plus(dag, index)):
            raise AssertionError(
                f"image of {X_RING.var_str(index)} fails verification")
        pairs.append((index, image))
    return MonomialParam(pairs=tuple(pairs))


@dataclass(frozen=True)
class FiberReport:
    """Fiber binomials of a monomial image map in one degree."""

    degree: int
    variables: str
    fibers: tuple          # tuples of x monomials sharing an image
    binomials: tuple       # Poly differences, one spanning set
    span_dim: int
    kernel_dim: int
    verdict: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "variables": self.variables,
            "fiber_count": len(self.fibers),
            "binomial_span_dim": self.span_dim,
            "kernel_dim": self.kernel_dim,
            "binomial_in_degree": self.verdict,
        }


def binomial_fibers(dag: DagModel, degree: int, variables: str = "plus",
                    limits: Limits = DEFAULT_LIMITS) -> FiberReport:
    """Group degree-d monomials by monomial image and compare spans.

    The verdict is true iff the fiber differences span the full
    degree-d kernel, whose dimension is computed independently in
    standard coordinates by the dense route.
    """
    if variables == "plus":
        if not toric_criterion(dag):
            raise PreconditionError(
                "summed-variable fibers require the non-sink criterion")
        var_list = plus_indices(dag)
        image_of = {v: plus_monomial(dag, v) for v in var_list}
    elif variables == "standard":
        from .ideal import basic_indices
        var_list = basic_indices(dag)
        image_of = {v: standard_monomial(dag, v) for v in var_list}
    else:
        raise InputError(f"unknown variable set {variables!r}")
    monos = _graded_monomials(var_list, degree, limits)
    groups: dict = {}
    for mono in monos:
        image = ()
        for v, e in mono:
            for _ in range(e):
                image = mono_mul(image, image_of[v])
        groups.setdefault(image, []).append(mono)
    fibers = tuple(tuple(g) for _, g in sorted(groups.items())
                   if len(g) > 1)
    binomials = []
    for fiber in fibers:
        head = fiber[0]
        for other in fiber[1:]:
            binomials.append(Poly(X_RING, {head: Fraction(1),
                                           other: Fraction(-1)}))
    span = sum(len(f) - 1 for f in fibers)
    kernel_dim = graded_kernel(dag, degree, "standard", limits).dim
    return FiberReport(
        degree=degree,
        variables=variables,
        fibers=fibers,
        binomials=tuple(binomials),
        span_dim=span,
        kernel_dim=kernel_dim,
        verdict=span == kernel_dim,
    )


# ---------------------------------------------------------------------------
# Quadratic form rank certificates.

@dataclass(frozen=True)
class QuadFormMatrix:
    """Symmetric coefficient matrix of a quadratic form on its support."""

    variables: tuple
    entries: tuple  # tuple of tuples of Fractions

    @property
    def size(self) -> int:
        return len(self.variables)

    def to_json(self) -> dict:
        return {
            "variables": [X_RING.var_str(v) for v in self.variables],
            "matrix": [[str(x) for x in row] for row in self.entries],
        }


def _symmetric_matrix(f: Poly, variables) -> list:
    index = {v: i for i, v in enumerate(variables)}
    size = len(variables)
    entries = [[Fraction(0)] * size for _ in range(size)]
    for mono, coeff in f.terms.items():
        if len(mono) == 1:
            v, e = mono[0]
            if e != 2:
                raise InputError("not a quadratic form")
            entries[index[v]][index[v]] = coeff
        elif len(mono) == 2:
            (v, ev), (w, ew) = mono
            if ev != 1 or ew != 1:
                raise InputError("not a quadratic form")
            half = coeff / 2
            entries[index[v]][index[w]] = half
            entries[index[w]][index[v]] = half
        else:
            raise InputError("not a quadratic form")
    return entries


def quad_form_rank(f: Poly, model: DagModel | None = None):
    """Symmetric matrix of a quadratic form and its exact rank.

    Summed variables are expanded first when a model is supplied, so
    the rank refers to the basic coordinates.
    """
    if model is not None:
        f = expand_poly(model, f)
    if f.is_zero():
        return QuadFormMatrix(variables=(), entries=()), 0
    if f.ring is not X_RING or f.homogeneous_degree() != 2:
        raise InputError("expected a homogeneous quadratic x polynomial")
    variables = tuple(sorted(f.variables()))
    entries = _symmetric_matrix(f, variables)
    rows = [{j: x for j, x in enumerate(row) if x} for row in entries]
    rank = linalg.span_dim(rows)
    matrix = QuadFormMatrix(
        variables=variables,
        entries=tuple(tuple(row) for row in entries))
    return matrix, rank


@dataclass(frozen=True)
class PencilRankReport:
    """Rank behaviour of f + c*g over the rationals.

    ``pivot_poly`` is the final elimination pivot of the symmetric
    matrix pencil restricted to the union support: a polynomial in c
    whose nonvanishing witnesses the generic rank.  The verdict is true
    iff the rank stays at the generic value for every nonzero rational
    c, established by rechecking the rank at each nonzero rational root
    of the pivot.
    """

    generic_rank: int
    pivot_poly: tuple        # Fraction coefficients, constant first
    rational_roots: tuple    # nonzero rational roots of the pivot
    drops: tuple             # (root, rank) pairs where the rank drops
    verdict: bool

    def to_json(self) -> dict:
        return {
            "generic_rank": self.generic_rank,
            "pivot_poly": [str(c) for c in self.pivot_poly],
            "nonzero_rational_roots": [str(r) for r in self.rational_roots],
            "rank_drops": [[str(r), k] for r, k in self.drops],
            "verdict": self.verdict,
        }


def _rational_roots(coeffs) -> list:
    """Nonzero rational roots of a univariate polynomial, via factoring."""
    import sympy

    c = sympy.Symbol("c")
    expr = sum(sympy.Rational(co) * c ** i for i, co in enumerate(coeffs))
    if expr == 0:
        raise InputError("zero polynomial has every root")
    roots = []
    _, factors = sympy.factor_list(sympy.Poly(expr, c))
    for factor, _ in factors:
        if factor.degree() == 1:
            a1, a0 = factor.all_coeffs()
            root = Fraction(-sympy.Rational(a0, a1))
            if root:
                roots.append(root)
    return sorted(set(roots))


def pairwise_rank_poly(f: Poly, g: Poly, model: DagModel | None = None,
                       max_support: int = 16) -> PencilRankReport:
    """Certify the rank of the pencil f + c*g on the union support.

    Both forms are quadratic; the union of their supports must stay
    within ``max_support`` variables.  When the pencil is singular for
    every c the determinant vanishes identically, so the certificate
    uses the largest elimination pivot instead and rechecks the exact
    rank at each of its nonzero rational roots.
    """
    if model is not None:
        f = expand_poly(model, f)
        g = expand_poly(model, g)
    for form in (f, g):
        if form.ring is not X_RING or form.homogeneous_degree() not in (2, 0):
            raise InputError("expected homogeneous quadratic x polynomials")
    support = tuple(sorted(f.variables() | g.variables()))
    if len(support) > max_support:
        raise GuardExceeded(
            f"union support of {len(support)} variables exceeds the "
            f"restriction bound {max_support}")
    sf = _symmetric_matrix(f, support)
    sg = _symmetric_matrix(g, support)
    size = len(support)
    pencil = [[linalg.uni_trim((sf[i][j], sg[i][j])) for j in range(size)]
              for i in range(size)]
    pivots = linalg.poly_matrix_pivots(pencil)
    if not pivots:
        return PencilRankReport(0, (), (), (), False)
    generic_rank = len(pivots)
    pivot = pivots[-1]
    roots = _rational_roots(pivot)
    drops = []
    for root in roots:
        at_root = [
            {j: sf[i][j] + root * sg[i][j] for j in range(size)
             if sf[i][j] + root * sg[i][j]}
            for i in range(size)]
        rank_here = linalg.span_dim(at_root)
        if rank_here < generic_rank:
            drops.append((root, rank_here))
    return PencilRankReport(
        generic_rank=generic_rank,
        pivot_poly=tuple(pivot),
        rational_roots=tuple(roots),
        drops=tuple(drops),
        verdict=not drops,
    )
