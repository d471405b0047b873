# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse integer echelon kernel.

Same algorithm as ``_elim_py.echelon`` (fraction-free cross
multiplication, content normalization, leading-column pivoting) over
int64 values.  Every multiplication and subtraction is overflow
checked; an OverflowError tells the caller to redo the computation
with arbitrary-precision integers.  Outputs are bit-identical to the
pure implementation whenever no overflow occurs.
"""

from cpython cimport array

import array

cdef long long LLMAX = 9223372036854775807

cdef array.array _TMPL = array.array('q', [])


cdef inline long long _gcd(long long a, long long b) noexcept:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline long long _mul(long long a, long long b) except? -1:
    cdef long long aa, bb
    if a == 0 or b == 0:
        return 0
    aa = a if a > 0 else -a
    bb = b if b > 0 else -b
    if aa > LLMAX // bb:
        raise OverflowError("int64 overflow in multiply")
    return a * b


cdef inline long long _sub(long long x, long long y) except? -1:
    if y > 0:
        if x < -LLMAX + y:
            raise OverflowError("int64 overflow in subtract")
    elif y < 0:
        if x > LLMAX + y:
            raise OverflowError("int64 overflow in subtract")
    return x - y


cdef Py_ssize_t _combine(long long ma, long long[::1] ac, long long[::1] av,
                         Py_ssize_t na,
                         long long mb, long long[::1] bc, long long[::1] bv,
                         Py_ssize_t nb,
                         long long[::1] oc, long long[::1] ov) except -1:
    """ma*a - mb*b into (oc, ov); returns the output length."""
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef long long v
    while i < na and j < nb:
        if ac[i] == bc[j]:
            v = _sub(_mul(ma, av[i]), _mul(mb, bv[j]))
            if v != 0:
                oc[k] = ac[i]
                ov[k] = v
                k += 1
            i += 1
            j += 1
        elif ac[i] < bc[j]:
            oc[k] = ac[i]
            ov[k] = _mul(ma, av[i])
            k += 1
            i += 1
        else:
            oc[k] = bc[j]
            ov[k] = _mul(-mb, bv[j])
            k += 1
            j += 1
    while i < na:
        oc[k] = ac[i]
        ov[k] = _mul(ma, av[i])
        k += 1
        i += 1
    while j < nb:
        oc[k] = bc[j]
        ov[k] = _mul(-mb, bv[j])
        k += 1
        j += 1
    return k


cdef void _divide(long long[::1] vals, Py_ssize_t n, long long g) noexcept:
    cdef Py_ssize_t i
    for i in range(n):
        vals[i] = vals[i] // g


cdef long long _content(long long[::1] vals, Py_ssize_t n,
                        long long g) noexcept:
    cdef Py_ssize_t i
    for i in range(n):
        g = _gcd(g, vals[i])
    return g


def echelon_parts(rows, bint track):
    """Run the echelon; returns (rows, lead_cols, pivot_inputs, kernel)."""
    cdef list ech_c = [], ech_v = [], ech_tc = [], ech_tv = []
    cdef list ech_len = [], ech_tlen = []
    cdef dict by_col = {}
    cdef list lead_cols = [], pivot_inputs = [], kernel = []

    cdef array.array rc, rv, tc, tv, nc, nv, ntc, ntv, pc, pv, ptc, ptv
    cdef Py_ssize_t rn, tn, pn, ptn, new_n, new_tn
    cdef long long a, b, g, ma, mb, lead
    cdef Py_ssize_t index = -1

    for row in rows:
        index += 1
        items = sorted(row.items())
        rn = len(items)
        rc = array.clone(_TMPL, rn, False)
        rv = array.clone(_TMPL, rn, False)
        rn = 0
        for col, val in items:
            if val == 0:
                continue
            rc.data.as_longlongs[rn] = col
            rv.data.as_longlongs[rn] = val
            rn += 1
        if track:
            tc = array.clone(_TMPL, 1, False)
            tv = array.clone(_TMPL, 1, False)
            tc.data.as_longlongs[0] = index
            tv.data.as_longlongs[0] = 1
            tn = 1
        else:
            tc = tv = None
            tn = 0

        while rn > 0:
            entry = by_col.get(rc.data.as_longlongs[0])
            if entry is None:
                break
            k = <Py_ssize_t> entry
            pc = <array.array> ech_c[k]
            pv = <array.array> ech_v[k]
            pn = <Py_ssize_t> ech_len[k]
            a = pv.data.as_longlongs[0]
            b = rv.data.as_longlongs[0]
            g = _gcd(a, b)
            ma = a // g
            mb = b // g
            nc = array.clone(_TMPL, rn + pn, False)
            nv = array.clone(_TMPL, rn + pn, False)
            new_n = _combine(ma, rc, rv, rn, mb, pc, pv, pn, nc, nv)
            rc, rv, rn = nc, nv, new_n
            if track:
                ptc = <array.array> ech_tc[k]
                ptv = <array.array> ech_tv[k]
                ptn = <Py_ssize_t> ech_tlen[k]
                ntc = array.clone(_TMPL, tn + ptn, False)
                ntv = array.clone(_TMPL, tn + ptn, False)
                new_tn = _combine(ma, tc, tv, tn, mb, ptc, ptv, ptn, ntc, ntv)
                tc, tv, tn = ntc, ntv, new_tn
            # joint content normalization, lead kept positive
            g = _content(rv, rn, 0)
            if track:
                g = _content(tv, tn, g)
            if g != 0:
                if rn > 0:
                    lead = rv.data.as_longlongs[0]
                elif tn > 0:
                    lead = tv.data.as_longlongs[0]
                else:
                    lead = 1
                if lead < 0:
                    g = -g
                if g != 1:
                    _divide(rv, rn, g)
                    if track:
                        _divide(tv, tn, g)

        if rn > 0:
            g = _content(rv, rn, 0)
            if track:
                g = _content(tv, tn, g)
            if rv.data.as_longlongs[0] < 0:
                g = -g
            if g != 1 and g != 0:
                _divide(rv, rn, g)
                if track:
                    _divide(tv, tn, g)
            by_col[rc.data.as_longlongs[0]] = len(ech_c)
            lead_cols.append(rc.data.as_longlongs[0])
            pivot_inputs.append(index)
            ech_c.append(rc)
            ech_v.append(rv)
            ech_len.append(rn)
            if track:
                ech_tc.append(tc)
                ech_tv.append(tv)
                ech_tlen.append(tn)
            else:
                ech_tc.append(None)
                ech_tv.append(None)
                ech_tlen.append(0)
        elif track:
            g = _content(tv, tn, 0)
            if g != 0:
                if tv.data.as_longlongs[0] < 0:
                    g = -g
                if g != 1:
                    _divide(tv, tn, g)
            kernel.append({tc.data.as_longlongs[i]: tv.data.as_longlongs[i]
                           for i in range(tn)})

    out_rows = []
    for k in range(len(ech_c)):
        pc = <array.array> ech_c[k]
        pv = <array.array> ech_v[k]
        pn = <Py_ssize_t> ech_len[k]
        out_rows.append([(pc.data.as_longlongs[i], pv.data.as_longlongs[i])
                         for i in range(pn)])
    return out_rows, lead_cols, pivot_inputs, kernel
