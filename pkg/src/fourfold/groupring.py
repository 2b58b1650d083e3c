"""Group rings Z[pi] for products of cyclic groups and Laurent extensions.

Every supported group is abelian: a finite product of cyclic factors,
optionally extended by free Z factors (Laurent variables).  Elements are
exponent tuples, one coordinate per generator; finite coordinates are
reduced mod their order, Laurent coordinates are signed integers.  The
enumeration of a finite group is lexicographic in the exponent tuple and
fixed once, so every matrix expansion downstream is reproducible.
"""

import itertools
from dataclasses import dataclass

from fourfold.errors import (
    GroupMismatch,
    InfiniteGroup,
    UnsupportedCharacter,
    UnsupportedGroup,
)
from fourfold.intmat import IntMatrix

__all__ = [
    "GroupDescriptor",
    "trivial_group",
    "cyclic_group",
    "product_group",
    "laurent_extension",
    "OrientationChar",
    "trivial_char",
    "char_from_signs",
    "RingElement",
    "ring_zero",
    "ring_one",
    "ring_generator",
    "norm_element",
    "regular_representation",
    "RingMatrix",
]

# full group-law verification is only run up to this order; the cyclic
# product construction is associative by construction above it
_VERIFY_ORDER_BOUND = 64

_descriptor_cache = {}


@dataclass(frozen=True)
class GroupDescriptor:
    """orders: cyclic factor orders (each >= 1); laurent_rank: free rank."""

    orders: tuple
    laurent_rank: int

    @property
    def kind(self):
        if self.laurent_rank:
            return "laurent"
        if not self.orders:
            return "trivial"
        if len(self.orders) == 1:
            return "cyclic"
        return "product"

    @property
    def is_finite(self):
        return self.laurent_rank == 0

    @property
    def ngens(self):
        return len(self.orders) + self.laurent_rank

    def order(self):
        if not self.is_finite:
            raise InfiniteGroup("group has Laurent rank %d" % self.laurent_rank)
        n = 1
        for o in self.orders:
            n *= o
        return n

    @property
    def identity(self):
        return (0,) * self.ngens

    def reduce(self, el):
        if len(el) != self.ngens:
            raise GroupMismatch("element of length %d in group with %d generators" % (len(el), self.ngens))
        return tuple(
            e % o if i < len(self.orders) else e
            for i, (e, o) in enumerate(zip(el, self.orders + (0,) * self.laurent_rank))
        )

    def mul(self, a, b):
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def inv(self, a):
        return self.reduce(tuple(-x for x in a))

    def generator(self, i):
        el = [0] * self.ngens
        el[i] = 1
        return self.reduce(tuple(el))

    def elements(self):
        """All elements of a finite group, lexicographic in exponents."""
        if not self.is_finite:
            raise InfiniteGroup("cannot enumerate a Laurent extension")
        return _element_table(self)[0]

    def element_index(self, el):
        return _element_table(self)[1][self.reduce(el)]

    def finite_part(self):
        return _get_descriptor(self.orders, 0)

    def __str__(self):
        if self.kind == "trivial":
            base = "trivial"
        elif self.kind == "cyclic":
            base = "Z/%d" % self.orders[0]
        else:
            base = " x ".join("Z/%d" % o for o in self.orders) or "trivial"
        if self.laurent_rank:
            base += " x Z" + ("^%d" % self.laurent_rank if self.laurent_rank > 1 else "")
        return base


def _get_descriptor(orders, laurent_rank):
    key = (tuple(orders), laurent_rank)
    if key not in _descriptor_cache:
        g = GroupDescriptor(key[0], laurent_rank)
        _descriptor_cache[key] = g
        if g.is_finite and g.order() <= _VERIFY_ORDER_BOUND:
            _verify_group_law(g)
    return _descriptor_cache[key]


_element_tables = {}


def _element_table(g):
    key = (g.orders, g.laurent_rank)
    if key not in _element_tables:
        els = [tuple(t) for t in itertools.product(*(range(o) for o in g.orders))]
        _element_tables[key] = (els, {e: i for i, e in enumerate(els)})
    return _element_tables[key]


def _verify_group_law(g):
    els = g.elements()
    e = g.identity
    for a in els:
        if g.mul(a, e) != a or g.mul(e, a) != a:
            raise AssertionError("identity fails in %s" % g)
        if g.mul(a, g.inv(a)) != e:
            raise AssertionError("inverse fails in %s" % g)
    for a in els:
        for b in els:
            ab = g.mul(a, b)
            for c in els:
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)):
                    raise AssertionError("associativity fails in %s" % g)


def trivial_group():
    return _get_descriptor((), 0)


def cyclic_group(n):
    if n < 1:
        raise UnsupportedGroup("cyclic order must be >= 1")
    return _get_descriptor((n,), 0)


def product_group(orders):
    orders = tuple(int(o) for o in orders)
    if any(o < 1 for o in orders):
        raise UnsupportedGroup("cyclic orders must be >= 1")
    return _get_descriptor(orders, 0)


def laurent_extension(base, rank=1):
    if rank < 1:
        raise UnsupportedGroup("Laurent rank must be >= 1")
    return _get_descriptor(base.orders, base.laurent_rank + rank)


@dataclass(frozen=True)
class OrientationChar:
    """Homomorphism pi -> Z/2, stored as a sign per generator.

    A generator of odd finite order must map to +1; this is checked at
    construction.
    """

    group: GroupDescriptor
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != self.group.ngens:
            raise UnsupportedCharacter(
                "need %d signs, got %d" % (self.group.ngens, len(self.signs))
            )
        if any(s not in (1, -1) for s in self.signs):
            raise UnsupportedCharacter("signs must be +1 or -1")
        for o, s in zip(self.group.orders, self.signs):
            if s == -1 and o % 2 == 1:
                raise UnsupportedCharacter(
                    "generator of odd order %d cannot have sign -1" % o
                )

    @property
    def is_trivial(self):
        return all(s == 1 for s in self.signs)

    def sign(self, el):
        """(-1)^w on a group element."""
        parity = 0
        for e, s in zip(el, self.signs):
            if s == -1:
                parity += e
        return -1 if parity % 2 else 1

    def restrict_finite(self):
        """The character on the finite part of a Laurent extension."""
        k = len(self.group.orders)
        return OrientationChar(self.group.finite_part(), self.signs[:k])


def trivial_char(group):
    return OrientationChar(group, (1,) * group.ngens)


def char_from_signs(group, signs):
    return OrientationChar(group, tuple(signs))


class RingElement:
    """Element of Z[pi]: finitely many exponent tuples with int coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms):
        self.group = group
        clean = {}
        for el, c in terms.items():
            if c:
                key = group.reduce(el)
                c2 = clean.get(key, 0) + c
                if c2:
                    clean[key] = c2
                elif key in clean:
                    del clean[key]
        self.terms = clean

    def _check(self, other):
        if self.group is not other.group and self.group != other.group:
            raise GroupMismatch("elements over %s and %s" % (self.group, other.group))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for el, c in other.terms.items():
            terms[el] = terms.get(el, 0) + c
        return RingElement(self.group, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RingElement(self.group, {el: -c for el, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.group, {el: c * other for el, c in self.terms.items()})
        self._check(other)
        terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = self.group.mul(a, b)
                terms[key] = terms.get(key, 0) + ca * cb
        return RingElement(self.group, terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def involute(self):
        """g -> g^-1 extended linearly (the untwisted involution)."""
        return RingElement(self.group, {self.group.inv(el): c for el, c in self.terms.items()})

    def twist(self, w):
        """Multiply the coefficient of each g by (-1)^w(g)."""
        return RingElement(self.group, {el: c * w.sign(el) for el, c in self.terms.items()})

    def augmentation(self):
        return sum(self.terms.values())

    def twisted_augmentation(self, w):
        """Sum of coefficients weighted by (-1)^w(g)."""
        return sum(c * w.sign(el) for el, c in self.terms.items())

    def map_group(self, target, embed):
        """Push the element into another group along an exponent map."""
        return RingElement(target, {embed(el): c for el, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for el, c in self.sorted_terms():
            bits.append("%+d*t%s" % (c, list(el)))
        return " ".join(bits)


def ring_zero(group):
    return RingElement(group, {})


def ring_one(group):
    return RingElement(group, {group.identity: 1})


def ring_generator(group, i, power=1):
    el = [0] * group.ngens
    el[i] = power
    return RingElement(group, {tuple(el): 1})


def norm_element(group):
    """Sum of all elements of a finite group."""
    return RingElement(group, {el: 1 for el in group.elements()})


def regular_representation(a):
    """Integer matrix of multiplication by a on Z[pi], finite pi.

    Column j holds the coordinates of a * g_j in the fixed enumeration,
    so regular_representation(a*b) == rep(a) * rep(b).
    """
    g = a.group
    if not g.is_finite:
        raise InfiniteGroup("regular representation needs a finite group")
    els, index = _element_table(g)
    n = len(els)
    data = [[0] * n for _ in range(n)]
    for j, gj in enumerate(els):
        for el, c in a.terms.items():
            data[index[g.mul(el, gj)]][j] += c
    return IntMatrix(n, n, data)


class RingMatrix:
    """Matrix over Z[pi], stored as rows of RingElements."""

    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group, rows, cols, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise GroupMismatch("ragged ring matrix")
        self.group = group
        self.rows = rows
        self.cols = cols
        self.entries = [list(r) for r in entries]

    @classmethod
    def zeros(cls, group, rows, cols):
        z = ring_zero(group)
        return cls(group, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, group, n):
        one = ring_one(group)
        z = ring_zero(group)
        return cls(group, n, n, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_int_matrix(cls, group, m):
        one = ring_one(group)
        return cls(group, m.rows, m.cols, [[one * x for x in r] for r in m.data])

    def entry(self, i, j):
        return self.entries[i][j]

    def __mul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise GroupMismatch("ring matrix shapes %dx%d and %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        z = ring_zero(self.group)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(self.group, self.rows, other.cols, out)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise GroupMismatch("ring matrix shapes differ")
        return RingMatrix(
            self.group,
            self.rows,
            self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def scale(self, n):
        return self.map_entries(lambda e: e * n)

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def is_zero(self):
        return all(e.is_zero() for r in self.entries for e in r)

    def map_entries(self, fn, group=None):
        g = group or self.group
        return RingMatrix(g, self.rows, self.cols, [[fn(e) for e in r] for r in self.entries])

    def twist(self, w):
        return self.map_entries(lambda e: e.twist(w))

    def transpose_involute(self, w=None):
        """Involuted transpose; with w also applies the orientation signs.

        This is the dual of a map of free modules in the fixed bases.
        """
        out = []
        for j in range(self.cols):
            row = []
            for i in range(self.rows):
                e = self.entries[i][j].involute()
                if w is not None:
                    e = e.twist(w)
                row.append(e)
            out.append(row)
        return RingMatrix(self.group, self.cols, self.rows, out)

    def augment(self, w=None):
        """Entrywise (twisted) augmentation down to an integer matrix."""
        if w is None:
            data = [[e.augmentation() for e in r] for r in self.entries]
        else:
            data = [[e.twisted_augmentation(w) for e in r] for r in self.entries]
        return IntMatrix(self.rows, self.cols, data)

    def expand(self):
        """Integer block matrix of the map on Z-coordinates, finite pi.

        Each entry becomes its regular representation block; a column of
        the result is the coordinate vector of the image of one basis
        element of the source.
        """
        g = self.group
        if not g.is_finite:
            raise InfiniteGroup("expansion needs a finite group")
        n = g.order()
        data = [[0] * (self.cols * n) for _ in range(self.rows * n)]
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entries[i][j]
                if e.is_zero():
                    continue
                block = regular_representation(e)
                for bi in range(n):
                    row = data[i * n + bi]
                    brow = block.data[bi]
                    for bj in range(n):
                        if brow[bj]:
                            row[j * n + bj] = brow[bj]
        return IntMatrix(self.rows * n, self.cols * n, data)

    def __repr__(self):
        return "RingMatrix(%s, %d, %d)" % (self.group, self.rows, self.cols)


def ring_matrix_from_columns(group, columns, rows):
    """Assemble a RingMatrix from per-column lists of RingElements."""
    z = ring_zero(group)
    entries = [[z] * len(columns) for _ in range(rows)]
    for j, col in enumerate(columns):
        for i, e in enumerate(col):
            entries[i][j] = e
    return RingMatrix(group, rows, len(columns), entries)


def deexpand_vector(group, vec, ranks):
    """Inverse of expand() on a coordinate vector: Z^(ranks*|pi|) -> Z[pi]^ranks."""
    els = group.elements()
    n = len(els)
    if len(vec) != ranks * n:
        raise GroupMismatch("vector length %d, expected %d" % (len(vec), ranks * n))
    out = []
    for i in range(ranks):
        terms = {}
        for k, el in enumerate(els):
            c = vec[i * n + k]
            if c:
                terms[el] = c
        out.append(RingElement(group, terms))
    return out
