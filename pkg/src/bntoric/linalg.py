"""Exact linear algebra over the rationals.

Sparse rows (dicts column -> Fraction or int) are scaled to integers
and reduced by the fraction-free echelon kernel; ranks, spans,
membership tests and left null spaces are all exact.  A small dense
toolbox for univariate polynomial matrices supports the rank
certificates for pencils of quadratic forms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from . import kernels
from .errors import InputError
from .kernels import EchelonResult


def integerize(row: dict) -> tuple[dict, Fraction]:
    """Scale a rational row to integers; returns (int row, scale used)."""
    denom = 1
    for v in row.values():
        if isinstance(v, Fraction):
            denom = lcm(denom, v.denominator)
    if denom == 1:
        return {c: int(v) for c, v in row.items() if v}, Fraction(1)
    out = {}
    for c, v in row.items():
        w = Fraction(v) * denom
        if w:
            out[c] = int(w)
    return out, Fraction(denom)


def span_echelon(rows) -> EchelonResult:
    """Echelon of the span of the given rational rows."""
    return kernels.echelon([integerize(r)[0] for r in rows])


def span_dim(rows) -> int:
    return span_echelon(rows).rank


def in_span(ech: EchelonResult, row: dict) -> bool:
    return not ech.reduce(integerize(row)[0])


def left_nullspace(rows) -> list[dict[int, Fraction]]:
    """Primitive integer combinations c with sum_i c_i * row_i = 0."""
    int_rows = []
    scales = []
    for r in rows:
        ir, s = integerize(r)
        int_rows.append(ir)
        scales.append(s)
    result = kernels.echelon(int_rows, track=True)
    out = []
    for combo in result.kernel:
        vec = {i: c * scales[i] for i, c in combo.items()}
        denom = lcm(*(v.denominator for v in vec.values()))
        ints = [int(v * denom) for v in vec.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        lead = min(vec)
        if vec[lead] < 0:
            g = -g
        out.append({i: Fraction(int(v * denom), g) for i, v in vec.items()})
    return out


# ---------------------------------------------------------------------------
# Dense univariate polynomials (tuples of Fractions, constant term first).

UNI_ZERO: tuple = ()
UNI_ONE = (Fraction(1),)


def uni_trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def uni_add(p, q) -> tuple:
    n = max(len(p), len(q))
    return uni_trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
        for i in range(n))


def uni_scale(p, s) -> tuple:
    s = Fraction(s)
    if not s:
        return UNI_ZERO
    return tuple(c * s for c in p)


def uni_mul(p, q) -> tuple:
    if not p or not q:
        return UNI_ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return uni_trim(out)


def uni_sub(p, q) -> tuple:
    return uni_add(p, uni_scale(q, -1))


def uni_divexact(p, q) -> tuple:
    """Quotient p/q when the division is exact; error otherwise."""
    if not q:
        raise InputError("division by the zero polynomial")
    if not p:
        return UNI_ZERO
    rem = list(p)
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(q) - 1] / lead
        out[k] = c
        if c:
            for i, b in enumerate(q):
                rem[k + i] -= c * b
    if any(rem):
        raise InputError("inexact polynomial division")
    return uni_trim(out)


def uni_eval(p, x) -> Fraction:
    x = Fraction(x)
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def poly_matrix_pivots(matrix) -> list[tuple]:
    """Fraction-free elimination pivots of a univariate polynomial matrix.

    Entries are dense univariate polynomials; pivoting is by column
    order with the first nonzero row taken.  The k-th returned pivot is
    (up to sign) the determinant of a k x k submatrix, so the final one
    witnesses the generic rank.
    """
    m = [list(row) for row in matrix]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    pivots: list[tuple] = []
    prev = UNI_ONE
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][col]
        for i in range(r + 1, nrows):
            head = m[i][col]
            for j in range(col + 1, ncols):
                m[i][j] = uni_divexact(
                    uni_sub(uni_mul(m[i][j], piv), uni_mul(head, m[r][j])),
                    prev)
            m[i][col] = UNI_ZERO
        pivots.append(piv)
        prev = piv
        r += 1
        if r == nrows:
            break
    return pivots
