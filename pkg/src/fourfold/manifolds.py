"""Cellular complexes and invariants of the model manifolds.

Lens spaces L_{p,q} with their linking forms and homotopy
classification, the mapping tori L x S^1, and the small closed
4-manifolds used as anchors (S^4, CP^2, RP^4, T^4).
"""

import math
from dataclasses import dataclass

from fourfold.complexes import LambdaComplex, cross_circle, point_complex, validate
from fourfold.errors import InvalidLens, OrderMismatch
from fourfold.groupring import (
    RingMatrix,
    char_from_signs,
    cyclic_group,
    norm_element,
    ring_generator,
    ring_one,
    trivial_char,
)

__all__ = [
    "LensSpace",
    "lens_complex",
    "fundamental_class_invariant",
    "lens_homotopy_equivalent",
    "LinkingForm",
    "linking_form",
    "linking_isometric",
    "lens_times_circle",
    "s4_complex",
    "cp2_complex",
    "rp4_complex",
    "torus4_complex",
]


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidLens("need p >= 2")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidLens("q must be a unit mod p")

    def __str__(self):
        return "L(%d,%d)" % (self.p, self.q)


def lens_complex(lens):
    """The standard cellular chain complex of L_{p,q} over Z[Z/p].

    Ranks (1,1,1,1); d_1 = t - 1, d_2 = N, d_3 = t^e - 1 where e is the
    inverse of q mod p.  This normalization makes the top boundary carry
    the chosen identification of the fundamental class.
    """
    g = cyclic_group(lens.p)
    t = ring_generator(g, 0)
    one = ring_one(g)
    e = pow(lens.q, -1, lens.p)
    d1 = RingMatrix(g, 1, 1, [[t - one]])
    d2 = RingMatrix(g, 1, 1, [[norm_element(g)]])
    d3 = RingMatrix(g, 1, 1, [[ring_generator(g, 0, e) - one]])
    c = LambdaComplex(g, trivial_char(g), (1, 1, 1, 1), (d1, d2, d3))
    validate(c)
    return c


def fundamental_class_invariant(lens):
    """Image of the fundamental class in H_3 of the group: q^{-1} mod p."""
    return pow(lens.q, -1, lens.p)


def lens_homotopy_equivalent(p, q1, q2):
    """Oriented homotopy classification: q2 = +- r^2 q1 mod p.

    Returns (equivalent, r, sign) with the smallest witnessing unit, or
    (False, None, None).  The two directions of the relation are
    equivalent (replace r by its inverse); the witness is reported for
    the second parameter in terms of the first.
    """
    _check_pair(p, q1, q2)
    for r in range(1, p):
        if math.gcd(r, p) != 1:
            continue
        rr = r * r % p
        if (q2 - rr * q1) % p == 0:
            return True, r, 1
        if (q2 + rr * q1) % p == 0:
            return True, r, -1
    return False, None, None


@dataclass(frozen=True)
class LinkingForm:
    """The form (x, y) -> -value * x * y / order on Z/order."""

    order: int
    value: int

    def __post_init__(self):
        if math.gcd(self.order, self.value) != 1:
            raise InvalidLens("linking form value must be a unit")

    def evaluate_num(self, x, y):
        """Numerator of the value on (x, y), i.e. -value*x*y mod order."""
        return (-self.value * x * y) % self.order


def linking_form(lens):
    return LinkingForm(lens.p, lens.q % lens.p)


def linking_isometric(f1, f2):
    """Isometry up to sign: f2.value = +- u^2 f1.value mod order.

    Returns (isometric, u, sign) with a witnessing unit.
    """
    if f1.order != f2.order:
        raise OrderMismatch("forms on Z/%d and Z/%d" % (f1.order, f2.order))
    p = f1.order
    for u in range(1, p):
        if math.gcd(u, p) != 1:
            continue
        uu = u * u % p
        if (f2.value - uu * f1.value) % p == 0:
            return True, u, 1
        if (f2.value + uu * f1.value) % p == 0:
            return True, u, -1
    return False, None, None


def lens_times_circle(lens):
    """The 4-manifold L_{p,q} x S^1 over Z[Z/p x Z]."""
    c = cross_circle(lens_complex(lens))
    validate(c)
    return c


def s4_complex():
    """S^4: one 0-cell and one 4-cell over the trivial group."""
    base = point_complex()
    g = base.group
    w = base.w
    z01 = RingMatrix.zeros(g, 1, 0)
    z00 = RingMatrix.zeros(g, 0, 0)
    z10 = RingMatrix.zeros(g, 0, 1)
    c = LambdaComplex(g, w, (1, 0, 0, 0, 1), (z01, z00, z00, z10))
    validate(c)
    return c


def cp2_complex():
    """CP^2: cells in degrees 0, 2, 4 over the trivial group."""
    base = point_complex()
    g = base.group
    w = base.w
    c = LambdaComplex(
        g,
        w,
        (1, 0, 1, 0, 1),
        (
            RingMatrix.zeros(g, 1, 0),
            RingMatrix.zeros(g, 0, 1),
            RingMatrix.zeros(g, 1, 0),
            RingMatrix.zeros(g, 0, 1),
        ),
    )
    validate(c)
    return c


def rp4_complex():
    """RP^4 over Z[Z/2] with the orientation character sending t to -1."""
    g = cyclic_group(2)
    t = ring_generator(g, 0)
    one = ring_one(g)
    minus = RingMatrix(g, 1, 1, [[t - one]])
    plus = RingMatrix(g, 1, 1, [[t + one]])
    w = char_from_signs(g, (-1,))
    c = LambdaComplex(g, w, (1, 1, 1, 1, 1), (minus, plus, minus, plus))
    validate(c)
    return c


def torus4_complex():
    """T^4 as the four-fold circle product of a point."""
    c = point_complex()
    for _ in range(4):
        c = cross_circle(c)
    validate(c)
    return c


def _check_pair(p, q1, q2):
    if p < 2:
        raise InvalidLens("need p >= 2")
    if math.gcd(p, q1) != 1 or math.gcd(p, q2) != 1:
        raise InvalidLens("q parameters must be units mod p")
