"""Group descriptors, orientation characters, and the integral group ring."""

import random

import pytest

from fourfold.groupring import (
    OrientationChar,
    RingMatrix,
    char_from_signs,
    cyclic_group,
    deexpand_vector,
    laurent_extension,
    norm_element,
    product_group,
    regular_representation,
    ring_generator,
    ring_one,
    ring_zero,
    trivial_char,
    trivial_group,
)
from fourfold.errors import GroupMismatch, InfiniteGroup, UnsupportedCharacter, UnsupportedGroup


def test_group_descriptor_basics():
    g = cyclic_group(6)
    assert g.is_finite and g.order() == 6
    assert g.identity == (0,)
    t = g.generator(0)
    assert g.mul(t, t) == (2,)
    assert g.inv((1,)) == (5,)
    assert g.reduce((7,)) == (1,)
    els = g.elements()
    assert len(els) == 6
    assert els[0] == g.identity
    for i, el in enumerate(els):
        assert g.element_index(el) == i


def test_product_group_enumeration_is_lexicographic():
    g = product_group((2, 3))
    assert g.order() == 6
    assert g.elements() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert g.mul((1, 2), (1, 2)) == (0, 1)
    assert g.inv((1, 1)) == (1, 2)


def test_group_law_random():
    rng = random.Random(8)
    for orders in ((4,), (2, 2), (3, 5), (2, 2, 2)):
        g = product_group(orders)
        els = g.elements()
        for _ in range(60):
            a, b, c = (rng.choice(els) for _ in range(3))
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
            assert g.mul(a, b) == g.mul(b, a)
            assert g.mul(a, g.inv(a)) == g.identity


def test_laurent_extension():
    g = laurent_extension(cyclic_group(4))
    assert not g.is_finite
    with pytest.raises(InfiniteGroup):
        g.order()
    with pytest.raises(InfiniteGroup):
        g.elements()
    assert g.ngens == 2
    assert g.reduce((5, -2)) == (1, -2)
    assert g.finite_part().order() == 4
    g2 = laurent_extension(trivial_group(), rank=2)
    assert g2.ngens == 2
    assert g2.mul((1, -1), (2, 3)) == (3, 2)


def test_bad_group_parameters():
    with pytest.raises(UnsupportedGroup):
        cyclic_group(0)
    with pytest.raises(UnsupportedGroup):
        product_group((2, -3))


def test_orientation_char():
    g = cyclic_group(2)
    w = char_from_signs(g, (-1,))
    assert not w.is_trivial
    assert w.sign((0,)) == 1
    assert w.sign((1,)) == -1
    assert trivial_char(g).is_trivial
    with pytest.raises(UnsupportedCharacter):
        char_from_signs(cyclic_group(3), (-1,))
    with pytest.raises(UnsupportedCharacter):
        char_from_signs(g, (2,))
    with pytest.raises(UnsupportedCharacter):
        char_from_signs(g, (1, 1))


def test_char_is_multiplicative():
    g = product_group((2, 4))
    w = char_from_signs(g, (-1, -1))
    els = g.elements()
    for a in els:
        for b in els:
            assert w.sign(g.mul(a, b)) == w.sign(a) * w.sign(b)


def test_char_restrict_finite():
    g = laurent_extension(cyclic_group(2))
    w = char_from_signs(g, (-1, 1))
    wf = w.restrict_finite()
    assert wf.group.order() == 2
    assert wf.signs == (-1,)


def test_ring_element_arithmetic():
    g = cyclic_group(5)
    t = ring_generator(g, 0)
    one = ring_one(g)
    z = ring_zero(g)
    assert t + z == t
    assert t - t == z
    assert (t + one) * (t - one) == t * t - one
    assert 3 * t == t + t + t
    assert (-t) + t == z
    assert t * ring_generator(g, 0, 4) == one


def test_involution_and_augmentation():
    rng = random.Random(41)
    g = product_group((2, 3))
    els = g.elements()

    def rand_elem():
        from fourfold.groupring import RingElement
        terms = {}
        for _ in range(rng.randint(0, 4)):
            terms[rng.choice(els)] = rng.randint(-5, 5)
        return RingElement(g, terms)

    w = char_from_signs(g, (-1, 1))
    for _ in range(80):
        a, b = rand_elem(), rand_elem()
        assert (a * b).involute() == a.involute() * b.involute()
        assert a.involute().involute() == a
        assert (a * b).augmentation() == a.augmentation() * b.augmentation()
        assert (a * b).twisted_augmentation(w) == a.twisted_augmentation(w) * b.twisted_augmentation(w)
        assert (a * b).twist(w) == a.twist(w) * b.twist(w)
        assert a.twist(w).twist(w) == a


def test_norm_element():
    g = cyclic_group(4)
    n = norm_element(g)
    t = ring_generator(g, 0)
    assert t * n == n
    assert n.augmentation() == 4
    w = char_from_signs(g, (-1,))
    assert n.twisted_augmentation(w) == 0


def test_regular_representation_is_multiplicative():
    rng = random.Random(17)
    for orders in ((3,), (2, 2), (4,)):
        g = product_group(orders)
        els = g.elements()
        from fourfold.groupring import RingElement
        for _ in range(40):
            a = RingElement(g, {rng.choice(els): rng.randint(-3, 3) for _ in range(2)})
            b = RingElement(g, {rng.choice(els): rng.randint(-3, 3) for _ in range(2)})
            assert regular_representation(a * b) == regular_representation(a) * regular_representation(b)
        assert regular_representation(ring_one(g)).is_identity()


def test_ring_matrix_expand_is_functorial():
    rng = random.Random(23)
    g = product_group((2, 2))
    els = g.elements()
    from fourfold.groupring import RingElement

    def rand_mat(r, c):
        entries = [
            [RingElement(g, {rng.choice(els): rng.randint(-2, 2)}) for _ in range(c)]
            for _ in range(r)
        ]
        return RingMatrix(g, r, c, entries)

    for _ in range(25):
        a = rand_mat(2, 3)
        b = rand_mat(3, 2)
        assert (a * b).expand() == a.expand() * b.expand()
        assert (a * b).augment() == a.augment() * b.augment()
        w = char_from_signs(g, (-1, 1))
        assert (a * b).augment(w) == a.augment(w) * b.augment(w)
        # involution reverses products on the transpose side
        assert (a * b).transpose_involute() == b.transpose_involute() * a.transpose_involute()


def test_expand_deexpand_round_trip():
    g = cyclic_group(3)
    t = ring_generator(g, 0)
    m = RingMatrix(g, 2, 1, [[t + ring_one(g)], [2 * t]])
    full = m.expand()
    # column 0 of the expansion is the image of generator 0
    col = full.column(0)
    back = deexpand_vector(g, list(col), 2)
    assert back[0] == t + ring_one(g)
    assert back[1] == 2 * t
    with pytest.raises(GroupMismatch):
        deexpand_vector(g, [0] * 5, 2)


def test_expand_requires_finite_group():
    g = laurent_extension(trivial_group())
    m = RingMatrix.identity(g, 1)
    with pytest.raises(InfiniteGroup):
        m.expand()


def test_map_group_embedding():
    small = cyclic_group(2)
    big = product_group((2, 3))
    t = ring_generator(small, 0)

    def embed(el):
        return (el[0], 0)

    img = (t + ring_one(small)).map_group(big, embed)
    assert img.augmentation() == 2
    assert img == ring_generator(big, 0) + ring_one(big)
