"""Finite chain complexes of free modules over a group ring.

A complex stores ranks C_0..C_n and boundary matrices d_i: C_i -> C_{i-1}
(shape ranks[i-1] x ranks[i]) together with an orientation character.
Construction checks shapes only; validate() checks d.d = 0 exactly, and
every built-in constructor calls it.
"""

from fourfold.errors import (
    DegreeOutOfRange,
    GroupMismatch,
    InfiniteGroup,
    NotAComplex,
    UnsupportedGroup,
)
from fourfold.extensions import fpmodule_homology
from fourfold.groupring import (
    OrientationChar,
    RingMatrix,
    laurent_extension,
    ring_generator,
    ring_one,
    ring_zero,
    trivial_char,
    trivial_group,
)
from fourfold.intmat import homology_invariants

__all__ = [
    "LambdaComplex",
    "validate",
    "twisted_dual",
    "homology_Zw",
    "homology_Lambda",
    "point_complex",
    "presentation_complex",
    "cross_circle",
    "tensor_complex",
    "euler_char_mod2",
]


class LambdaComplex:
    """Free chain complex over Z[pi] with an orientation character."""

    def __init__(self, group, w, ranks, boundaries):
        if w.group != group:
            raise GroupMismatch("character lives over %s" % (w.group,))
        ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in ranks):
            raise ValueError("negative rank")
        if len(boundaries) != max(len(ranks) - 1, 0):
            raise ValueError(
                "expected %d boundary maps, got %d" % (max(len(ranks) - 1, 0), len(boundaries))
            )
        for i, b in enumerate(boundaries, start=1):
            if b.group != group:
                raise GroupMismatch("boundary %d lives over %s" % (i, b.group))
            if b.rows != ranks[i - 1] or b.cols != ranks[i]:
                raise ValueError(
                    "boundary %d has shape %dx%d, expected %dx%d"
                    % (i, b.rows, b.cols, ranks[i - 1], ranks[i])
                )
        self.group = group
        self.w = w
        self.ranks = ranks
        self.boundaries = tuple(boundaries)

    @property
    def top_degree(self):
        return len(self.ranks) - 1

    def d(self, i):
        """Boundary C_i -> C_{i-1}, 1-based."""
        if not 1 <= i <= self.top_degree:
            raise DegreeOutOfRange("no boundary in degree %d" % i)
        return self.boundaries[i - 1]

    def __repr__(self):
        return "LambdaComplex(%s, ranks=%s)" % (self.group, list(self.ranks))


def validate(c):
    """Check d_{i-1} . d_i = 0 exactly; raises NotAComplex on failure."""
    for i in range(2, c.top_degree + 1):
        if not (c.d(i - 1) * c.d(i)).is_zero():
            raise NotAComplex(i)
    return True


def twisted_dual(c):
    """Degree-reversed dual with the orientation twist on every entry.

    The boundary of the dual in degree i is the w-twisted involuted
    transpose of d_{n+1-i}.  Applying the construction twice gives back
    the original complex entry for entry.
    """
    n = c.top_degree
    ranks = tuple(reversed(c.ranks))
    boundaries = [c.d(n + 1 - i).transpose_involute(c.w) for i in range(1, n + 1)]
    return LambdaComplex(c.group, c.w, ranks, boundaries)


def homology_Zw(c, i):
    """Homology with twisted integer coefficients at degree i."""
    n = c.top_degree
    if not 0 <= i <= n:
        raise DegreeOutOfRange("degree %d outside 0..%d" % (i, n))
    d_out = c.d(i).augment(c.w) if i >= 1 else None
    d_in = c.d(i + 1).augment(c.w) if i < n else None
    return homology_invariants(d_out, d_in, c.ranks[i])


def homology_Lambda(c, i):
    """Homology with group ring coefficients at degree i, finite groups.

    Returns (abelian invariants, module presentation with the pi-action).
    """
    if not c.group.is_finite:
        raise InfiniteGroup("group ring homology needs a finite group")
    n = c.top_degree
    if not 0 <= i <= n:
        raise DegreeOutOfRange("degree %d outside 0..%d" % (i, n))
    zero_out = RingMatrix.zeros(c.group, 0, c.ranks[i])
    zero_in = RingMatrix.zeros(c.group, c.ranks[i], 0)
    d_out = c.d(i) if i >= 1 else zero_out
    d_in = c.d(i + 1) if i < n else zero_in
    mod = fpmodule_homology(d_out, d_in)
    return mod.abelian_invariants(), mod


def point_complex():
    """The one-point space: rank (1,) over the trivial group."""
    g = trivial_group()
    return LambdaComplex(g, trivial_char(g), (1,), ())


def presentation_complex(group, wedge_cells=0):
    """The 2-complex of the standard presentation of a finite product of
    cyclic groups: one generator per factor, power relators, and one
    commutator relator per pair.  Optional extra 2-cells attach
    trivially (wedged spheres).

    The cover of the result has vanishing first homology, which is what
    the chasing routines need from their 2-skeleton input.
    """
    if not group.is_finite:
        raise UnsupportedGroup("presentation complexes only for finite groups here")
    k = group.ngens
    one = ring_one(group)
    zero = ring_zero(group)
    gens = [ring_generator(group, i) for i in range(k)]
    d1 = RingMatrix(group, 1, k, [[g - one for g in gens]])
    cols = []
    for i in range(k):
        col = [zero] * k
        col[i] = _power_relator_column(group, i)
        cols.append(col)
    for i in range(k):
        for j in range(i + 1, k):
            col = [zero] * k
            col[i] = one - gens[j]
            col[j] = gens[i] - one
            cols.append(col)
    for _ in range(wedge_cells):
        cols.append([zero] * k)
    d2 = RingMatrix(
        group, k, len(cols), [[cols[c][r] for c in range(len(cols))] for r in range(k)]
    )
    c = LambdaComplex(group, trivial_char(group), (1, k, len(cols)), (d1, d2))
    validate(c)
    return c


def _power_relator_column(group, i):
    """1 + g + ... + g^(order-1) for the i-th generator."""
    order = group.orders[i]
    acc = ring_zero(group)
    for e in range(order):
        acc = acc + ring_generator(group, i, e)
    return acc


def cross_circle(c, sign=1):
    """Tensor with the standard circle complex over a new Laurent variable.

    The sign is the value of the orientation character on the new
    generator.  Boundary convention: d(x (x) y) = dx (x) y
    + (-1)^deg(x) x (x) dy.
    """
    new_group = laurent_extension(c.group, 1)
    w = OrientationChar(new_group, c.w.signs + (sign,))

    def embed(el):
        return el + (0,)

    circle_d1 = RingMatrix(
        new_group,
        1,
        1,
        [[ring_generator(new_group, new_group.ngens - 1) - ring_one(new_group)]],
    )
    circle = LambdaComplex(new_group, w, (1, 1), (circle_d1,))
    lifted = LambdaComplex(
        new_group,
        w,
        c.ranks,
        tuple(b.map_entries(lambda e: e.map_group(new_group, embed), new_group) for b in c.boundaries),
    )
    return tensor_complex(lifted, circle)


def tensor_complex(a, b):
    """Tensor product over a common group ring.

    Degree n is the direct sum of A_i (x) B_j over i + j = n, blocks
    ordered by increasing i, pairs within a block ordered row-major.  The
    boundary is dA (x) id + (-1)^i id (x) dB.
    """
    if a.group != b.group:
        raise GroupMismatch("tensor factors live over different groups")
    if a.w != b.w:
        raise GroupMismatch("tensor factors carry different characters")
    g = a.group
    na, nb = a.top_degree, b.top_degree
    n = na + nb

    def blocks(deg):
        out = []
        for i in range(deg + 1):
            j = deg - i
            if i <= na and j <= nb and a.ranks[i] and b.ranks[j]:
                out.append((i, j))
        return out

    def block_rank(i, j):
        return a.ranks[i] * b.ranks[j]

    ranks = []
    offsets = []
    for deg in range(n + 1):
        off = {}
        total = 0
        for (i, j) in blocks(deg):
            off[(i, j)] = total
            total += block_rank(i, j)
        ranks.append(total)
        offsets.append(off)

    zero = ring_zero(g)
    boundaries = []
    for deg in range(1, n + 1):
        rows = ranks[deg - 1]
        cols = ranks[deg]
        entries = [[zero] * cols for _ in range(rows)]
        for (i, j) in blocks(deg):
            src_off = offsets[deg][(i, j)]
            rb = b.ranks[j]
            # dA (x) id into block (i-1, j)
            if i >= 1 and (i - 1, j) in offsets[deg - 1]:
                dst_off = offsets[deg - 1][(i - 1, j)]
                da = a.d(i)
                for ai in range(da.rows):
                    for aj in range(da.cols):
                        e = da.entries[ai][aj]
                        if e.is_zero():
                            continue
                        for bj in range(rb):
                            entries[dst_off + ai * rb + bj][src_off + aj * rb + bj] = e
            # (-1)^i id (x) dB into block (i, j-1)
            if j >= 1 and (i, j - 1) in offsets[deg - 1]:
                dst_off = offsets[deg - 1][(i, j - 1)]
                db = b.d(j)
                sgn = -1 if i % 2 else 1
                rbm = b.ranks[j - 1]
                for bi in range(db.rows):
                    for bj in range(db.cols):
                        e = db.entries[bi][bj]
                        if e.is_zero():
                            continue
                        if sgn < 0:
                            e = -e
                        for ai in range(a.ranks[i]):
                            entries[dst_off + ai * rbm + bi][src_off + ai * rb + bj] = e
        boundaries.append(RingMatrix(g, rows, cols, entries))
    out = LambdaComplex(g, a.w, tuple(ranks), tuple(boundaries))
    validate(out)
    return out


def euler_char_mod2(c):
    chi = 0
    for i, r in enumerate(c.ranks):
        chi += r if i % 2 == 0 else -r
    return chi % 2
