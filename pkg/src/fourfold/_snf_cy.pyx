# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Smith normal form reduction kernel.

Twin of _snf_py.snf_inplace: same pivot rule, same elementary operations,
same update order, so results are bit-identical.  Entries stay Python
ints (arbitrary precision); the win over the pure version is loop and
dispatch overhead, not the arithmetic itself.
"""


def snf_inplace(list d, list u, list uinv, list v, list vinv, Py_ssize_t m, Py_ssize_t n):
    cdef Py_ssize_t t = 0
    cdef Py_ssize_t mn = m if m < n else n
    cdef Py_ssize_t i, j, bi, bj, bad
    cdef list di, dt
    cdef object x, bv, p, q
    cdef bint dirty
    while t < mn:
        bi = -1
        bj = -1
        bv = 0
        for i in range(t, m):
            di = <list> d[i]
            for j in range(t, n):
                x = di[j]
                if x != 0:
                    if x < 0:
                        x = -x
                    if bi < 0 or x < bv:
                        bi = i
                        bj = j
                        bv = x
        if bi < 0:
            break
        if bi != t:
            _swap_rows(d, u, uinv, t, bi)
        if bj != t:
            _swap_cols(d, v, vinv, t, bj)
        if (<list> d[t])[t] < 0:
            _negate_row(d, u, uinv, t, m)
        p = (<list> d[t])[t]
        dirty = False
        for i in range(t + 1, m):
            x = (<list> d[i])[t]
            if x != 0:
                q = x // p
                if q != 0:
                    _row_sub(d, u, uinv, i, t, q, m)
                if (<list> d[i])[t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            x = (<list> d[t])[j]
            if x != 0:
                q = x // p
                if q != 0:
                    _col_sub(d, v, vinv, j, t, q, m, n)
                if (<list> d[t])[j] != 0:
                    dirty = True
        if dirty:
            continue
        bad = -1
        for i in range(t + 1, m):
            di = <list> d[i]
            for j in range(t + 1, n):
                if di[j] % p != 0:
                    bad = i
                    break
            if bad >= 0:
                break
        if bad >= 0:
            _row_add(d, u, uinv, t, bad, m)
            continue
        t += 1


cdef void _swap_rows(list d, list u, list uinv, Py_ssize_t a, Py_ssize_t b):
    cdef list r
    d[a], d[b] = d[b], d[a]
    u[a], u[b] = u[b], u[a]
    for r in uinv:
        r[a], r[b] = r[b], r[a]


cdef void _swap_cols(list d, list v, list vinv, Py_ssize_t a, Py_ssize_t b):
    cdef list r
    for r in d:
        r[a], r[b] = r[b], r[a]
    for r in v:
        r[a], r[b] = r[b], r[a]
    vinv[a], vinv[b] = vinv[b], vinv[a]


cdef void _negate_row(list d, list u, list uinv, Py_ssize_t t, Py_ssize_t m):
    cdef list dt = <list> d[t]
    cdef list ut = <list> u[t]
    cdef list r
    cdef Py_ssize_t j
    for j in range(len(dt)):
        dt[j] = -dt[j]
    for j in range(m):
        ut[j] = -ut[j]
    for r in uinv:
        r[t] = -r[t]


cdef void _row_sub(list d, list u, list uinv, Py_ssize_t i, Py_ssize_t t, object q, Py_ssize_t m):
    cdef list di = <list> d[i]
    cdef list dt = <list> d[t]
    cdef list ui = <list> u[i]
    cdef list ut = <list> u[t]
    cdef list r
    cdef Py_ssize_t j
    cdef object x
    for j in range(len(dt)):
        x = dt[j]
        if x != 0:
            di[j] = di[j] - q * x
    for j in range(m):
        x = ut[j]
        if x != 0:
            ui[j] = ui[j] - q * x
    for r in uinv:
        x = r[i]
        if x != 0:
            r[t] = r[t] + q * x


cdef void _row_add(list d, list u, list uinv, Py_ssize_t t, Py_ssize_t b, Py_ssize_t m):
    cdef list dt = <list> d[t]
    cdef list db = <list> d[b]
    cdef list ut = <list> u[t]
    cdef list ub = <list> u[b]
    cdef list r
    cdef Py_ssize_t j
    cdef object x
    for j in range(len(dt)):
        x = db[j]
        if x != 0:
            dt[j] = dt[j] + x
    for j in range(m):
        x = ub[j]
        if x != 0:
            ut[j] = ut[j] + x
    for r in uinv:
        x = r[t]
        if x != 0:
            r[b] = r[b] - x


cdef void _col_sub(list d, list v, list vinv, Py_ssize_t j, Py_ssize_t t, object q, Py_ssize_t m, Py_ssize_t n):
    cdef Py_ssize_t i, k
    cdef object x
    cdef list row
    for i in range(m):
        row = <list> d[i]
        x = row[t]
        if x != 0:
            row[j] = row[j] - q * x
    for i in range(n):
        row = <list> v[i]
        x = row[t]
        if x != 0:
            row[j] = row[j] - q * x
    cdef list vt = <list> vinv[t]
    cdef list vj = <list> vinv[j]
    for k in range(n):
        x = vj[k]
        if x != 0:
            vt[k] = vt[k] + q * x
