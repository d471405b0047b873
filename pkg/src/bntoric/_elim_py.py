"""Pure-Python sparse integer echelon kernel.

Rows are reduced incrementally against the pivots found so far using
fraction-free cross-multiplication: to cancel the leading entry of a
row against a pivot with values b and a, the combination (a/g)*row -
(b/g)*pivot is formed with g = gcd(a, b), and the result is divided by
its content.  Pivoting is by leading column; everything is exact over
the integers and fully deterministic.

The compiled kernel in ``_elim`` implements the identical algorithm
over int64 arrays and must produce identical output whenever it does
not overflow.
"""

from __future__ import annotations

from math import gcd


def _combine(ma, ra, mb, rb):
    """ma*ra - mb*rb for sorted (col, val) pair lists."""
    out = []
    i = j = 0
    na, nb = len(ra), len(rb)
    while i < na and j < nb:
        ca, va = ra[i]
        cb, vb = rb[j]
        if ca == cb:
            v = ma * va - mb * vb
            if v:
                out.append((ca, v))
            i += 1
            j += 1
        elif ca < cb:
            out.append((ca, ma * va))
            i += 1
        else:
            out.append((cb, -mb * vb))
            j += 1
    for ca, va in ra[i:]:
        out.append((ca, ma * va))
    for cb, vb in rb[j:]:
        out.append((cb, -mb * vb))
    return out


def _normalize(pairs, tpairs):
    """Divide both parts by their joint content; make the lead positive."""
    g = 0
    for _, v in pairs:
        g = gcd(g, v)
    if tpairs is not None:
        for _, v in tpairs:
            g = gcd(g, v)
    if g == 0:
        return pairs, tpairs
    lead = pairs[0][1] if pairs else tpairs[0][1]
    if lead < 0:
        g = -g
    if g != 1:
        pairs = [(c, v // g) for c, v in pairs]
        if tpairs is not None:
            tpairs = [(c, v // g) for c, v in tpairs]
    return pairs, tpairs


class EchelonResult:
    """Echelon rows plus, optionally, the kernel combinations found."""

    __slots__ = ("rows", "lead_cols", "by_col", "pivot_inputs", "kernel")

    def __init__(self, rows, lead_cols, pivot_inputs, kernel):
        self.rows = rows
        self.lead_cols = lead_cols
        self.pivot_inputs = pivot_inputs
        self.kernel = kernel
        self.by_col = {c: k for k, c in enumerate(lead_cols)}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Residue of a row after elimination; empty iff in the row span."""
        r = sorted((c, int(v)) for c, v in row.items() if v)
        while r:
            k = self.by_col.get(r[0][0])
            if k is None:
                break
            pivot = self.rows[k]
            a, b = pivot[0][1], r[0][1]
            g = gcd(a, b)
            r = _combine(a // g, r, b // g, pivot)
            r, _ = _normalize(r, None)
        return dict(r)


def echelon(rows, track: bool = False) -> EchelonResult:
    """Bring integer rows (dicts col -> value) into sparse echelon form.

    With ``track=True`` each row that reduces to zero contributes its
    exact input combination to ``kernel``; together these span the left
    null space of the input matrix.
    """
    ech_rows: list[list[tuple[int, int]]] = []
    ech_tracks: list = []
    lead_cols: list[int] = []
    by_col: dict[int, int] = {}
    pivot_inputs: list[int] = []
    kernel: list[dict[int, int]] = []

    for index, row in enumerate(rows):
        r = sorted((c, int(v)) for c, v in row.items() if v)
        t = [(index, 1)] if track else None
        while r:
            k = by_col.get(r[0][0])
            if k is None:
                break
            pivot = ech_rows[k]
            a, b = pivot[0][1], r[0][1]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            r = _combine(ma, r, mb, pivot)
            if track:
                t = _combine(ma, t, mb, ech_tracks[k])
            r, t = _normalize(r, t)
        if r:
            r, t = _normalize(r, t)
            by_col[r[0][0]] = len(ech_rows)
            lead_cols.append(r[0][0])
            ech_rows.append(r)
            ech_tracks.append(t)
            pivot_inputs.append(index)
        elif track:
            t, _ = _normalize(t, None)
            kernel.append(dict(t))

    return EchelonResult(
        rows=ech_rows,
        lead_cols=lead_cols,
        pivot_inputs=pivot_inputs,
        kernel=kernel,
    )
