"""Sparse multivariate polynomials over the rationals.

Two variable universes share one implementation.  Outcome-indexed x
variables are tuples over ``{1..kappa_i}`` with 0 standing for the
summed symbol ``+`` (printed ``x_11+1``).  Edge-label variables are
tuples ``("t", j, parent_values, k)`` together with the homogenizing
variable ``("z",)``.  Within each universe the keys are naturally
ordered, which fixes the canonical term order.  All coefficients are
`fractions.Fraction`; nothing is ever rounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InputError

Z = ("z",)


def label_var(j: int, pa_values, k: int) -> tuple:
    """Key of the edge label ``theta(X_j = k | parents take pa_values)``."""
    return ("t", j, tuple(pa_values), k)


def _format_x(key) -> str:
    return "x_" + "".join("+" if v == 0 else str(v) for v in key)


def _parse_x(name: str):
    if not name.startswith("x_"):
        raise InputError(f"not an x variable: {name!r}")
    out = []
    for ch in name[2:]:
        if ch == "+":
            out.append(0)
        elif ch.isdigit() and ch != "0":
            out.append(int(ch))
        else:
            raise InputError(f"bad index character {ch!r} in {name!r}")
    return tuple(out)


def _format_theta(key) -> str:
    if key == Z:
        return "z"
    _, j, pa, k = key
    return f"t{j}_{''.join(str(v) for v in pa)}_{k}"


def _parse_theta(name: str):
    if name == "z":
        return Z
    if not name.startswith("t"):
        raise InputError(f"not a label variable: {name!r}")
    try:
        head, pa, k = name[1:].split("_")
        return label_var(int(head), tuple(int(c) for c in pa), int(k))
    except ValueError as exc:
        raise InputError(f"malformed label name {name!r}") from exc


class Ring:
    """Variable universe tag; polynomials of different rings never mix."""

    __slots__ = ("name", "var_str", "var_key")

    def __init__(self, name, var_str, var_key):
        self.name = name
        self.var_str = var_str
        self.var_key = var_key

    def __repr__(self):
        return f"Ring({self.name})"


X_RING = Ring("x", _format_x, _parse_x)
THETA_RING = Ring("theta", _format_theta, _parse_theta)
_RINGS = {"x": X_RING, "theta": THETA_RING}

# A monomial is a tuple of (variable key, exponent) pairs with strictly
# increasing keys and positive exponents; () is the constant monomial.
ONE = ()


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_degree(m) -> int:
    return sum(e for _, e in m)


def _term_sort_key(item):
    mono, _ = item
    return (-mono_degree(mono), mono)


class Poly:
    """Immutable-by-convention sparse polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms=None):
        self.ring = ring
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, {})

    @classmethod
    def const(cls, ring: Ring, value) -> "Poly":
        value = Fraction(value)
        return cls(ring, {ONE: value} if value else {})

    @classmethod
    def variable(cls, ring: Ring, key) -> "Poly":
        return cls(ring, {((key, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, ring: Ring, exponents: dict, coeff=1) -> "Poly":
        coeff = Fraction(coeff)
        if not coeff:
            return cls.zero(ring)
        mono = tuple(sorted((v, e) for v, e in exponents.items() if e))
        if any(e < 0 for _, e in mono):
            raise InputError("negative exponent")
        return cls(ring, {mono: coeff})

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def homogeneous_degree(self):
        """The common degree of all terms, or None if inhomogeneous."""
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coeff(self, mono) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def sorted_terms(self):
        """Terms in graded order, highest degree first, then by key."""
        return sorted(self.terms.items(), key=_term_sort_key)

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "Poly") -> None:
        if self.ring is not other.ring:
            raise InputError(
                f"ring mismatch: {self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ring, other)
        self._check_ring(other)
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.ring, other)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(Poly.const(self.ring, other))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            scalar = Fraction(other)
            if not scalar:
                return Poly.zero(self.ring)
            return Poly(self.ring, {m: c * scalar for m, c in self.terms.items()})
        self._check_ring(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise InputError("negative power")
        result = Poly.const(self.ring, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring is other.ring
                and self.terms == other.terms)

    __hash__ = None

    # -- substitution and evaluation ----------------------------------

    def substitute(self, var, replacement: "Poly") -> "Poly":
        """Replace one variable by a polynomial of the same ring."""
        self._check_ring(replacement)
        powers = {0: Poly.const(self.ring, 1)}
        out = Poly.zero(self.ring)
        for m, c in self.terms.items():
            e = 0
            rest = []
            for v, ve in m:
                if v == var:
                    e = ve
                else:
                    rest.append((v, ve))
            base = Poly(self.ring, {tuple(rest): c})
            if e:
                if e not in powers:
                    p = max(powers)
                    while p < e:
                        powers[p + 1] = powers[p] * replacement
                        p += 1
                base = base * powers[e]
            out = out + base
        return out

    def substitute_vars(self, mapping: dict) -> "Poly":
        """Simultaneously replace several variables by polynomials."""
        out = Poly.zero(self.ring)
        for m, c in self.terms.items():
            factor = Poly.const(self.ring, c)
            plain = []
            for v, e in m:
                rep = mapping.get(v)
                if rep is None:
                    plain.append((v, e))
                else:
                    factor = factor * rep ** e
            if plain:
                factor = factor * Poly(self.ring, {tuple(plain): Fraction(1)})
            out = out + factor
        return out

    def evaluate(self, assignment: dict) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            value = c
            for v, e in m:
                if v not in assignment:
                    raise InputError(
                        f"no value assigned to {self.ring.var_str(v)}")
                value = value * Fraction(assignment[v]) ** e
            total += value
        return total

    # -- formatting ---------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            body = "*".join(
                self.ring.var_str(v) + (f"^{e}" if e > 1 else "")
                for v, e in mono)
            if not body:
                text = str(abs(coeff))
            elif abs(coeff) == 1:
                text = body
            else:
                text = f"{abs(coeff)}*{body}"
            parts.append(("- " if coeff < 0 else "+ ") + text)
        first = parts[0]
        first = "-" + first[2:] if first.startswith("- ") else first[2:]
        return " ".join([first] + parts[1:])

    def __repr__(self):
        return f"Poly[{self.ring.name}]({self})"

    def to_json(self) -> dict:
        terms = []
        for mono, coeff in self.sorted_terms():
            terms.append({
                "coeff": str(coeff),
                "mono": {self.ring.var_str(v): e for v, e in mono},
            })
        return {"ring": self.ring.name, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        try:
            ring = _RINGS[data["ring"]]
            entries = data["terms"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        out = cls.zero(ring)
        for entry in entries:
            exps = {ring.var_key(name): int(e)
                    for name, e in entry["mono"].items()}
            out = out + cls.monomial(ring, exps, Fraction(entry["coeff"]))
        return out


def x_variable(index) -> Poly:
    return Poly.variable(X_RING, tuple(index))


def expand_plus(model, index) -> Poly:
    """Expand a summed outcome vector into its sum of basic x variables.

    Entries equal to 0 stand for ``+`` and range over every level of
    that vertex; the result has one basic variable per completion.
    """
    cards = model.cards
    index = tuple(index)
    if len(index) != len(cards):
        raise InputError(
            f"index length {len(index)} does not match {len(cards)} vertices")
    for pos, v in enumerate(index):
        if not (v == 0 or 1 <= v <= cards[pos]):
            raise InputError(
                f"entry {v} out of range at position {pos + 1} "
                f"(levels 1..{cards[pos]})")
    open_positions = [pos for pos, v in enumerate(index) if v == 0]
    if not open_positions:
        return x_variable(index)
    terms = {}
    for completion in itertools.product(
            *(range(1, cards[pos] + 1) for pos in open_positions)):
        full = list(index)
        for pos, value in zip(open_positions, completion):
            full[pos] = value
        terms[((tuple(full), 1),)] = Fraction(1)
    return Poly(X_RING, terms)


@dataclass(frozen=True)
class QuotientContext:
    """Per-stage label lists defining the sum-to-z quotient.

    Each stage lists its labels in level order; the last label of every
    stage is eliminated, i.e. rewritten as z minus the other labels of
    the stage.  Normal forms therefore never contain an eliminated
    label.
    """

    stages: tuple[tuple, ...]

    def __post_init__(self):
        for stage in self.stages:
            if len(stage) < 2:
                raise InputError("every stage needs at least 2 labels")

    @cached_property
    def known(self) -> frozenset:
        return frozenset(v for stage in self.stages for v in stage) | {Z}

    @cached_property
    def eliminated(self) -> dict:
        """Map from each stage's last label to its replacement."""
        out = {}
        for stage in self.stages:
            rest = Poly.variable(THETA_RING, Z)
            for v in stage[:-1]:
                rest = rest - Poly.variable(THETA_RING, v)
            out[stage[-1]] = rest
        return out

    @cached_property
    def free_labels(self) -> tuple:
        return tuple(v for stage in self.stages for v in stage[:-1])


def normal_form(ctx: QuotientContext, p: Poly) -> Poly:
    """Canonical representative of ``p`` modulo the sum-to-z relations."""
    if p.ring is not THETA_RING:
        raise InputError("normal form applies to label-ring polynomials")
    unknown = p.variables() - ctx.known
    if unknown:
        name = THETA_RING.var_str(sorted(unknown)[0])
        raise InputError(f"unknown label id {name}")
    out = p
    for var, replacement in ctx.eliminated.items():
        if any(var == v for m in out.terms for v, _ in m):
            out = out.substitute(var, replacement)
    return out
