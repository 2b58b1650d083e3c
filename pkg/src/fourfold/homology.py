"""Group homology of finite products of cyclic groups.

Two independent routes are implemented: tensor products of the periodic
resolutions of the cyclic factors (the production route), and the
normalized bar resolution (the oracle, exponentially larger but assembled
straight from the group law).  The acceptance suite insists the two
agree; the bar route exists so nothing is ever checked against itself.
"""

import itertools
import os

from fourfold.complexes import LambdaComplex, tensor_complex, validate
from fourfold.errors import (
    BudgetExceeded,
    DegreeOutOfRange,
    InfiniteGroup,
    UnsupportedCharacter,
    UnsupportedGroup,
)
from fourfold.groupring import (
    RingMatrix,
    cyclic_group,
    norm_element,
    product_group,
    ring_generator,
    ring_one,
    trivial_char,
    trivial_group,
)
from fourfold.intmat import (
    AbelianInvariants,
    IntMatrix,
    cokernel_invariants,
    homology_invariants,
    quotient_invariants,
    preimage_kernel,
    hstack,
)

__all__ = [
    "Resolution",
    "periodic_resolution",
    "tensor_resolution",
    "group_homology",
    "bar_homology_oracle",
    "h4_of_pi_cross_Z",
    "homology_of_laurent_extension",
    "module_homology",
    "generator_budget",
    "DEFAULT_DEGREE_BOUND",
    "MAX_CYCLIC_FACTORS",
]

DEFAULT_DEGREE_BOUND = 5
MAX_CYCLIC_FACTORS = 3


def generator_budget():
    """Resolution size cap; override with the FOURFOLD_BUDGET variable."""
    try:
        return int(os.environ.get("FOURFOLD_BUDGET", "100000"))
    except ValueError:
        return 100000


class Resolution:
    """A free resolution of Z over Z[pi], truncated at a degree bound.

    Wraps a chain complex of free modules with trivial character whose
    augmented homology is Z in degree 0 and zero in degrees 1..bound-1.
    check_exactness verifies that on the full integer expansion.
    """

    def __init__(self, complex_, bound, verified=False):
        self.complex = complex_
        self.bound = bound
        if not verified:
            self.check_exactness()

    @property
    def group(self):
        return self.complex.group

    @property
    def ranks(self):
        return self.complex.ranks

    def d(self, i):
        return self.complex.d(i)

    def check_exactness(self):
        validate(self.complex)
        aug = [self.d(i).expand() for i in range(1, self.bound + 1)]
        n = self.group.order()
        h0 = homology_invariants(None, aug[0], self.ranks[0] * n)
        if h0 != AbelianInvariants(1, ()):
            raise AssertionError("H_0 of resolution is %s, expected Z" % h0)
        for i in range(1, self.bound):
            h = homology_invariants(aug[i - 1], aug[i], self.ranks[i] * n)
            if not h.is_trivial:
                raise AssertionError("resolution not exact in degree %d: %s" % (i, h))
        return True


def periodic_resolution(p, bound=DEFAULT_DEGREE_BOUND):
    """The rank-one periodic resolution of Z over Z[Z/p].

    Boundaries alternate t - 1 in odd degree and the norm in even degree.
    """
    g = cyclic_group(p)
    t = ring_generator(g, 0)
    one = ring_one(g)
    tm1 = RingMatrix(g, 1, 1, [[t - one]])
    nm = RingMatrix(g, 1, 1, [[norm_element(g)]])
    boundaries = tuple(tm1 if i % 2 == 1 else nm for i in range(1, bound + 1))
    c = LambdaComplex(g, trivial_char(g), (1,) * (bound + 1), boundaries)
    return Resolution(c, bound)


def trivial_resolution(bound=DEFAULT_DEGREE_BOUND):
    g = trivial_group()
    zero_first = RingMatrix.zeros(g, 1, 0)
    zeros = RingMatrix.zeros(g, 0, 0)
    boundaries = (zero_first,) + (zeros,) * (bound - 1)
    c = LambdaComplex(g, trivial_char(g), (1,) + (0,) * bound, boundaries)
    return Resolution(c, bound)


def tensor_resolution(r1, r2):
    """Resolution of Z over the product group from resolutions of the
    factors, truncated to the smaller bound."""
    bound = min(r1.bound, r2.bound)
    g = product_group(r1.group.orders + r2.group.orders)
    k1 = len(r1.group.orders)
    k2 = len(r2.group.orders)

    def embed_left(el):
        return el + (0,) * k2

    def embed_right(el):
        return (0,) * k1 + el

    w = trivial_char(g)
    left = _push_complex(r1.complex, g, embed_left, w, bound)
    right = _push_complex(r2.complex, g, embed_right, w, bound)
    c = tensor_complex(left, right)
    truncated = LambdaComplex(g, w, c.ranks[: bound + 1], c.boundaries[:bound])
    return Resolution(truncated, bound)


def _push_complex(c, group, embed, w, bound):
    ranks = c.ranks[: bound + 1]
    bs = tuple(
        b.map_entries(lambda e: e.map_group(group, embed), group) for b in c.boundaries[:bound]
    )
    return LambdaComplex(group, w, ranks, bs)


_resolution_cache = {}


def resolution_for(group, bound=DEFAULT_DEGREE_BOUND):
    """A resolution of Z for a finite product of cyclic groups.

    Cached per (group, bound): the exactness check runs once and callers
    share coordinates, so classes computed against the same resolution
    stay comparable.
    """
    if not group.is_finite:
        raise InfiniteGroup("resolutions are built for finite groups only")
    key = (group, bound)
    cached = _resolution_cache.get(key)
    if cached is not None:
        return cached
    orders = [o for o in group.orders if o > 1]
    if len(orders) > MAX_CYCLIC_FACTORS:
        raise UnsupportedGroup(
            "%d cyclic factors exceeds the default budget of %d" % (len(orders), MAX_CYCLIC_FACTORS)
        )
    if not orders:
        res = trivial_resolution(bound)
    else:
        res = periodic_resolution(orders[0], bound)
        for o in orders[1:]:
            res = tensor_resolution(res, periodic_resolution(o, bound))
    # align the element coordinates with the requested descriptor
    if res.group != group:
        res = _relabel_resolution(res, group)
    _resolution_cache[key] = res
    return res


def _relabel_resolution(res, group):
    src = res.group
    keep = [i for i, o in enumerate(group.orders) if o > 1]
    if tuple(group.orders[i] for i in keep) != src.orders:
        raise UnsupportedGroup("cannot align %s with %s" % (src, group))

    def embed(el):
        out = [0] * group.ngens
        for j, i in enumerate(keep):
            out[i] = el[j]
        return tuple(out)

    w = trivial_char(group)
    c = _push_complex(res.complex, group, embed, w, res.bound)
    return Resolution(c, res.bound, verified=True)


_homology_cache = {}


def group_homology(group, w, degree, bound=None):
    """H_degree(pi; Z^w) for a finite product of cyclic groups.

    Twisting happens at augmentation time: the resolution itself is
    untwisted and the boundary matrices are collapsed with the signed
    augmentation.
    """
    if degree < 0:
        raise DegreeOutOfRange("negative degree")
    if bound is None:
        bound = max(DEFAULT_DEGREE_BOUND, degree + 1)
    if degree + 1 > bound:
        raise DegreeOutOfRange("degree %d needs bound >= %d" % (degree, degree + 1))
    key = (group, w.signs, degree, bound)
    cached = _homology_cache.get(key)
    if cached is not None:
        return cached
    res = resolution_for(group, bound)
    d_out = res.d(degree).augment(w) if degree >= 1 else None
    d_in = res.d(degree + 1).augment(w)
    out = homology_invariants(d_out, d_in, res.ranks[degree])
    _homology_cache[key] = out
    return out


def _bar_tuples(els, k):
    return list(itertools.product(els, repeat=k))


def bar_homology_oracle(group, w, degree, normalized=True):
    """H_degree(pi; Z^w) from the (normalized) bar resolution.

    Generators in degree k are k-tuples of non-identity elements (all
    elements in the unnormalized variant); the boundary is the usual
    alternating sum, with the first face weighted by the character.
    Exponentially large, so guarded by the generator budget.
    """
    if not group.is_finite:
        raise InfiniteGroup("bar resolution needs a finite group")
    n = group.order()
    budget = generator_budget()
    count = (n - 1 if normalized else n) ** (degree + 1)
    if count > budget:
        raise BudgetExceeded(
            "bar resolution needs %d generators in degree %d, budget %d"
            % (count, degree + 1, budget)
        )
    d_out = _bar_boundary(group, w, degree, normalized) if degree >= 1 else None
    d_in = _bar_boundary(group, w, degree + 1, normalized)
    els = _bar_elements(group, normalized)
    dim = len(_bar_tuples(els, degree))
    return homology_invariants(d_out, d_in, dim)


def _bar_elements(group, normalized):
    els = group.elements()
    if normalized:
        e = group.identity
        els = [x for x in els if x != e]
    return els


def _bar_boundary(group, w, k, normalized):
    """Integer matrix of the bar boundary B_k -> B_{k-1} after twisting
    the coefficients down to Z^w."""
    els = _bar_elements(group, normalized)
    lower = _bar_tuples(els, k - 1)
    upper = _bar_tuples(els, k)
    index = {t: i for i, t in enumerate(lower)}
    e = group.identity
    data = [[0] * len(upper) for _ in range(len(lower))]

    def add(t, j, c):
        if normalized and any(x == e for x in t):
            return
        data[index[t]][j] += c

    for j, t in enumerate(upper):
        add(t[1:], j, w.sign(t[0]))
        for i in range(k - 1):
            merged = t[:i] + (group.mul(t[i], t[i + 1]),) + t[i + 2 :]
            add(merged, j, -1 if i % 2 == 0 else 1)
        add(t[:-1], j, -1 if k % 2 == 1 else 1)
    return IntMatrix(len(lower), len(upper), data)


def homology_of_laurent_extension(base, w_base, laurent_rank, top=4):
    """H_0..H_top of base x Z^rank with untwisted Laurent directions.

    Iterates the splitting H_n(pi x Z) = H_n(pi) + H_{n-1}(pi), which
    needs no torsion correction because H_*(Z) is free.
    """
    hs = [group_homology(base, w_base, i) for i in range(top + 1)]
    for _ in range(laurent_rank):
        new = []
        for nn in range(top + 1):
            below = hs[nn - 1] if nn >= 1 else AbelianInvariants(0, ())
            new.append(hs[nn].direct_sum(below))
        hs = new
    return hs


def h4_of_pi_cross_Z(group, w):
    """H_4 of (finite pi) x Z with a character trivial on the Z factor."""
    if group.laurent_rank != 1:
        raise UnsupportedGroup("expected a Laurent extension of rank 1")
    if w.signs[-1] != 1:
        raise UnsupportedCharacter("character must be trivial on the Z factor")
    base = group.finite_part()
    w0 = w.restrict_finite()
    return group_homology(base, w0, 4).direct_sum(group_homology(base, w0, 3))


def module_homology(res, w, module, degree):
    """H_degree(pi; M^w) for a presented module M over the same group.

    The chain groups are presented as free integer lattices modulo the
    per-block relation span of M; boundaries act through the regular
    representation twisted by the character.
    """
    if degree < 0 or degree + 1 > res.bound:
        raise DegreeOutOfRange("degree %d outside resolution bound" % degree)
    rel = module.rel_lattice
    block = module.num_gens * module.group.order()

    def chain_relations(k):
        # block diagonal copies of the relation lattice
        data = [[0] * (k * rel.cols) for _ in range(k * block)]
        for c in range(k):
            for i in range(block):
                row = data[c * block + i]
                rrow = rel.data[i]
                for j in range(rel.cols):
                    if rrow[j]:
                        row[c * rel.cols + j] = rrow[j]
        return IntMatrix(k * block, k * rel.cols, data)

    def boundary_matrix(i):
        delta = res.d(i).twist(w)
        data = [[0] * (delta.cols * block) for _ in range(delta.rows * block)]
        for r in range(delta.rows):
            for c in range(delta.cols):
                entry = delta.entries[r][c]
                if entry.is_zero():
                    continue
                act = module.action_matrix(entry)
                for bi in range(block):
                    row = data[r * block + bi]
                    arow = act.data[bi]
                    for bj in range(block):
                        if arow[bj]:
                            row[c * block + bj] += arow[bj]
        return IntMatrix(delta.rows * block, delta.cols * block, data)

    dim = res.ranks[degree] * block
    rel_here = chain_relations(res.ranks[degree])
    if degree >= 1:
        d_out = boundary_matrix(degree)
        rel_below = chain_relations(res.ranks[degree - 1])
        cycles = preimage_kernel(d_out, rel_below)
    else:
        cycles = IntMatrix.identity(dim)
    d_in = boundary_matrix(degree + 1)
    bound_gens = hstack(d_in, rel_here)
    return quotient_invariants(cycles, bound_gens)
