"""Chain complexes over group rings: construction, duality, products."""

import pytest

from fourfold.complexes import (
    LambdaComplex,
    cross_circle,
    euler_char_mod2,
    homology_Lambda,
    homology_Zw,
    point_complex,
    presentation_complex,
    tensor_complex,
    twisted_dual,
    validate,
)
from fourfold.groupring import (
    RingMatrix,
    char_from_signs,
    cyclic_group,
    laurent_extension,
    product_group,
    ring_generator,
    ring_one,
    trivial_char,
    trivial_group,
)
from fourfold.intmat import AbelianInvariants
from fourfold.errors import (
    DegreeOutOfRange,
    GroupMismatch,
    InfiniteGroup,
    NotAComplex,
    UnsupportedGroup,
)


def test_shape_checks():
    g = cyclic_group(2)
    w = trivial_char(g)
    with pytest.raises(ValueError):
        LambdaComplex(g, w, (1, 1), ())
    with pytest.raises(ValueError):
        LambdaComplex(g, w, (1, 2), (RingMatrix.zeros(g, 1, 1),))
    with pytest.raises(GroupMismatch):
        LambdaComplex(g, trivial_char(cyclic_group(3)), (1,), ())
    wrong = RingMatrix.zeros(cyclic_group(3), 1, 1)
    with pytest.raises(GroupMismatch):
        LambdaComplex(g, w, (1, 1), (wrong,))


def test_validate_reports_offending_degree():
    g = cyclic_group(2)
    w = trivial_char(g)
    t = ring_generator(g, 0)
    one = ring_one(g)
    d1 = RingMatrix(g, 1, 1, [[t - one]])
    d2 = RingMatrix(g, 1, 1, [[one]])  # d1 . d2 = t - 1 != 0
    c = LambdaComplex(g, w, (1, 1, 1), (d1, d2))
    with pytest.raises(NotAComplex) as e:
        validate(c)
    assert e.value.degree == 2


def test_degree_bounds():
    c = point_complex()
    with pytest.raises(DegreeOutOfRange):
        c.d(1)
    with pytest.raises(DegreeOutOfRange):
        homology_Zw(c, 1)
    assert homology_Zw(c, 0) == AbelianInvariants(1, ())


def test_twisted_dual_is_an_involution():
    for c in (
        presentation_complex(cyclic_group(4)),
        presentation_complex(product_group((2, 2))),
    ):
        d = twisted_dual(c)
        dd = twisted_dual(d)
        assert dd.ranks == c.ranks
        for i in range(1, c.top_degree + 1):
            assert dd.d(i) == c.d(i)
        assert d.ranks == tuple(reversed(c.ranks))


def test_presentation_complex_shapes_and_exactness():
    c = presentation_complex(cyclic_group(5))
    assert c.ranks == (1, 1, 1)
    assert homology_Zw(c, 0) == AbelianInvariants(1, ())
    assert homology_Zw(c, 1) == AbelianInvariants(0, (5,))
    inv1, _ = homology_Lambda(c, 1)
    assert inv1.is_trivial
    # pi_2 of the cover: the augmentation ideal sitting inside the group ring
    inv2, _ = homology_Lambda(c, 2)
    assert inv2 == AbelianInvariants(4, ())

    k = presentation_complex(product_group((2, 2)))
    assert k.ranks == (1, 2, 3)
    assert homology_Zw(k, 1) == AbelianInvariants(0, (2, 2))
    inv1, _ = homology_Lambda(k, 1)
    assert inv1.is_trivial

    with pytest.raises(UnsupportedGroup):
        presentation_complex(laurent_extension(trivial_group()))


def test_presentation_complex_wedge_cells():
    base = presentation_complex(cyclic_group(3))
    wedged = presentation_complex(cyclic_group(3), wedge_cells=2)
    assert wedged.ranks == (1, 1, 3)
    b, _ = homology_Lambda(base, 2)
    ww, _ = homology_Lambda(wedged, 2)
    # each wedged cell contributes a free copy of the group ring to pi_2
    assert ww.free_rank == b.free_rank + 2 * 3
    assert ww.torsion == b.torsion


def test_cross_circle_kunneth():
    c = presentation_complex(cyclic_group(3))
    x = cross_circle(c)
    validate(x)
    assert x.top_degree == c.top_degree + 1
    n = c.top_degree
    for i in range(x.top_degree + 1):
        left = homology_Zw(c, i) if i <= n else AbelianInvariants(0, ())
        below = homology_Zw(c, i - 1) if 1 <= i <= n + 1 and i - 1 <= n else AbelianInvariants(0, ())
        assert homology_Zw(x, i) == left.direct_sum(below)


def test_cross_circle_twisted_sign():
    # the circle with the orientation character on its own generator
    x = cross_circle(point_complex(), sign=-1)
    assert homology_Zw(x, 0) == AbelianInvariants(0, (2,))
    assert homology_Zw(x, 1) == AbelianInvariants(0, ())


def test_torus_from_double_cross():
    t2 = cross_circle(cross_circle(point_complex()))
    assert t2.ranks == (1, 2, 1)
    assert homology_Zw(t2, 0) == AbelianInvariants(1, ())
    assert homology_Zw(t2, 1) == AbelianInvariants(2, ())
    assert homology_Zw(t2, 2) == AbelianInvariants(1, ())
    # same torus, orientation character -1 on the second circle factor:
    # Kunneth of an untwisted circle with a twisted one
    tw = cross_circle(cross_circle(point_complex()), sign=-1)
    assert homology_Zw(tw, 0) == AbelianInvariants(0, (2,))
    assert homology_Zw(tw, 1) == AbelianInvariants(0, (2,))
    assert homology_Zw(tw, 2) == AbelianInvariants(0, ())


def test_tensor_complex_unit_and_mismatch():
    c = presentation_complex(cyclic_group(2))
    p = LambdaComplex(c.group, c.w, (1,), ())
    t = tensor_complex(c, p)
    assert t.ranks == c.ranks
    for i in range(1, c.top_degree + 1):
        assert t.d(i) == c.d(i)
    other = presentation_complex(cyclic_group(3))
    with pytest.raises(GroupMismatch):
        tensor_complex(c, other)
    tw = LambdaComplex(c.group, char_from_signs(c.group, (-1,)), (1,), ())
    with pytest.raises(GroupMismatch):
        tensor_complex(c, tw)


def test_homology_lambda_needs_finite_group():
    x = cross_circle(point_complex())
    with pytest.raises(InfiniteGroup):
        homology_Lambda(x, 0)


def test_euler_char_mod2():
    assert euler_char_mod2(point_complex()) == 1
    assert euler_char_mod2(presentation_complex(cyclic_group(7))) == 1
    assert euler_char_mod2(presentation_complex(product_group((2, 2)))) == 0
    assert euler_char_mod2(presentation_complex(cyclic_group(2), wedge_cells=1)) == 0
