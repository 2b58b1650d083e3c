"""Pure Python Smith normal form reduction kernel.

This is the hot inner loop of the whole package.  A compiled twin lives in
_snf_cy.pyx with identical semantics; _kernels picks one at import time.
Entries are arbitrary precision Python ints throughout, so the two
implementations produce bit-identical output.

The routine reduces d in place to Smith normal form while maintaining the
row transform u (and its inverse uinv) and the column transform v (and
vinv), so that on exit

    u_end * d_start * v_end == d_end,   u * uinv == I,   vinv * v == I.

Pivot choice is the minimal nonzero absolute value in the remaining
submatrix, ties broken by smallest row then column index, which makes the
reduction fully deterministic.
"""


def snf_inplace(d, u, uinv, v, vinv, m, n):
    t = 0
    mn = m if m < n else n
    while t < mn:
        # locate the minimal-|.|-value nonzero entry of d[t:, t:]
        bi = -1
        bj = -1
        bv = 0
        for i in range(t, m):
            di = d[i]
            for j in range(t, n):
                x = di[j]
                if x:
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
        if d[t][t] < 0:
            _negate_row(d, u, uinv, t, m)
        p = d[t][t]
        dirty = False
        for i in range(t + 1, m):
            x = d[i][t]
            if x:
                q = x // p
                if q:
                    _row_sub(d, u, uinv, i, t, q, m)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            x = d[t][j]
            if x:
                q = x // p
                if q:
                    _col_sub(d, v, vinv, j, t, q, m, n)
                if d[t][j]:
                    dirty = True
        if dirty:
            # a remainder smaller than the pivot appeared; re-pick
            continue
        bad = -1
        for i in range(t + 1, m):
            di = d[i]
            for j in range(t + 1, n):
                if di[j] % p:
                    bad = i
                    break
            if bad >= 0:
                break
        if bad >= 0:
            _row_add(d, u, uinv, t, bad, m)
            continue
        t += 1


def _swap_rows(d, u, uinv, a, b):
    d[a], d[b] = d[b], d[a]
    u[a], u[b] = u[b], u[a]
    for r in uinv:
        r[a], r[b] = r[b], r[a]


def _swap_cols(d, v, vinv, a, b):
    for r in d:
        r[a], r[b] = r[b], r[a]
    for r in v:
        r[a], r[b] = r[b], r[a]
    vinv[a], vinv[b] = vinv[b], vinv[a]


def _negate_row(d, u, uinv, t, m):
    dt = d[t]
    for j in range(len(dt)):
        dt[j] = -dt[j]
    ut = u[t]
    for j in range(m):
        ut[j] = -ut[j]
    for r in uinv:
        r[t] = -r[t]


def _row_sub(d, u, uinv, i, t, q, m):
    # row_i -= q * row_t
    di = d[i]
    dt = d[t]
    for j in range(len(dt)):
        x = dt[j]
        if x:
            di[j] -= q * x
    ui = u[i]
    ut = u[t]
    for j in range(m):
        x = ut[j]
        if x:
            ui[j] -= q * x
    for r in uinv:
        x = r[i]
        if x:
            r[t] += q * x


def _row_add(d, u, uinv, t, b, m):
    # row_t += row_b
    dt = d[t]
    db = d[b]
    for j in range(len(dt)):
        x = db[j]
        if x:
            dt[j] += x
    ut = u[t]
    ub = u[b]
    for j in range(m):
        x = ub[j]
        if x:
            ut[j] += x
    for r in uinv:
        x = r[t]
        if x:
            r[b] -= x


def _col_sub(d, v, vinv, j, t, q, m, n):
    # col_j -= q * col_t
    for i in range(m):
        x = d[i][t]
        if x:
            d[i][j] -= q * x
    for i in range(n):
        x = v[i][t]
        if x:
            v[i][j] -= q * x
    vt = vinv[t]
    vj = vinv[j]
    for k in range(n):
        x = vj[k]
        if x:
            vt[k] += q * x
