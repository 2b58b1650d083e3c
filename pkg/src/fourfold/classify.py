"""Stable classification decisions for closed 4-manifolds.

Everything funnels into a small set of comparisons: the degree-4 twisted
group homology class of the classifying map up to signed automorphism
orbits, the lens-family criteria (which must all agree and are checked
against each other), the aspherical route through torsion of the twisted
quotient of pi_2, and the order bookkeeping of the low-degree exact
sequence linking manifold homology to group homology.
"""

from dataclasses import dataclass, field

from fourfold.complexes import homology_Lambda, homology_Zw
from fourfold.errors import (
    DimensionMismatch,
    HypothesisViolated,
    InfiniteGroup,
    InvalidLens,
    TypeMismatch,
    UnsupportedCharacter,
    UnsupportedGroup,
)
from fourfold.extensions import EmFamily, recover_m
from fourfold.groupring import (
    cyclic_group,
    laurent_extension,
    trivial_char,
)
from fourfold.homology import (
    group_homology,
    homology_of_laurent_extension,
    module_homology,
    resolution_for,
)
from fourfold.intmat import (
    AbelianInvariants,
    IntMatrix,
    induced_map_invariants,
    hstack,
    kernel_basis,
    preimage_kernel,
    smith_normal_form,
)
from fourfold.manifolds import (
    LensSpace,
    fundamental_class_invariant,
    lens_homotopy_equivalent,
    linking_form,
    linking_isometric,
)

__all__ = [
    "ManifoldRecord",
    "lens_times_circle_record",
    "bordism_group",
    "kreck_equivalent",
    "classify_lens_family",
    "LensFamilyReport",
    "classify_aspherical",
    "aspherical_equivalent",
    "hopf_check",
    "HopfReport",
]


@dataclass(frozen=True)
class ManifoldRecord:
    """What the stable classification needs from one manifold.

    class_h4 is a coordinate tuple for an element of the degree-4
    twisted homology of the group; h4 gives that group's invariants so
    coordinates can be reduced.  aut_multipliers lists the integers that
    act on the class by coordinatewise multiplication (the orbit is
    closed under products and global sign).
    """

    group: object
    w_signs: tuple
    class_h4: tuple
    h4: AbelianInvariants
    aut_multipliers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "class_h4", self.reduce(self.class_h4))

    def reduce(self, vec):
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.h4.free_rank + len(self.h4.torsion):
            raise DimensionMismatch(
                "class has %d coordinates, homology needs %d"
                % (len(vec), self.h4.free_rank + len(self.h4.torsion))
            )
        free = vec[: self.h4.free_rank]
        tors = tuple(
            x % t for x, t in zip(vec[self.h4.free_rank :], self.h4.torsion)
        )
        return free + tors


def squares_mod(n):
    """The multiplicative squares of units mod n, the built-in orbit
    generators for cyclic degree-4 homology."""
    if n <= 1:
        return (1,)
    out = []
    for r in range(1, n):
        if _gcd(r, n) == 1:
            out.append((r * r) % n)
    return tuple(sorted(set(out)))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def lens_times_circle_record(p, q):
    """Record for the circle product of a lens space.

    The group is Z/p x Z, the character is trivial, the degree-4 class
    is the standard invariant q^{-1} mod p, and the automorphism orbit
    is by signed squares of units.
    """
    lens = LensSpace(p, q)
    g = laurent_extension(cyclic_group(p), 1)
    base = cyclic_group(p)
    h4 = group_homology(base, trivial_char(base), 4).direct_sum(
        group_homology(base, trivial_char(base), 3)
    )
    return ManifoldRecord(
        group=g,
        w_signs=(1,) * g.ngens,
        class_h4=(fundamental_class_invariant(lens),),
        h4=h4,
        aut_multipliers=squares_mod(p),
    )


def bordism_group(group, w):
    """Stable bordism over a 1-type: the pair (wall piece, degree-4 piece).

    The first factor is Z for trivial character and Z/2 otherwise; the
    second is the degree-4 twisted homology of the group.
    """
    trivial_w = all(s == 1 for s in w.signs)
    stable = AbelianInvariants(1, ()) if trivial_w else AbelianInvariants(0, (2,))
    if group.is_finite:
        h4 = group_homology(group, w, 4)
    else:
        if any(s != 1 for s in w.signs[len(group.orders) :]):
            raise UnsupportedCharacter("character must be trivial on free directions")
        base = group.finite_part()
        w0 = w.restrict_finite()
        h4 = homology_of_laurent_extension(base, w0, group.laurent_rank)[4]
    return stable, h4


def kreck_equivalent(m1, m2):
    """Same stable class over a fixed 1-type: orbit membership of the
    degree-4 classes under signed automorphism multipliers.

    Returns (bool, certificate); the certificate names the multiplier
    and sign that carry the first class to the second, or None.
    """
    if m1.group != m2.group or m1.w_signs != m2.w_signs:
        raise TypeMismatch("records carry different groups or characters")
    if m1.h4 != m2.h4:
        raise TypeMismatch("records disagree on the degree-4 homology")
    start = m1.class_h4
    target = m2.class_h4
    gens = tuple(m1.aut_multipliers) + tuple(m2.aut_multipliers)
    if not gens:
        gens = (1,)
    seen = {start: (1, 1)}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            mult, sign = seen[vec]
            for m in gens:
                cand = m1.reduce(tuple(m * x for x in vec))
                if cand not in seen:
                    seen[cand] = (mult * m, sign)
                    nxt.append(cand)
            cand = m1.reduce(tuple(-x for x in vec))
            if cand not in seen:
                seen[cand] = (mult, -sign)
                nxt.append(cand)
        frontier = nxt
    if target in seen:
        mult, sign = seen[target]
        return True, {"multiplier": mult, "sign": sign}
    return False, None


def classify_lens_family(p, q1, q2):
    """All computable equivalence criteria for a pair of circle products
    of lens spaces, with the agreement assertion built in.

    Criteria: the orbit comparison of the degree-4 records, the signed
    square relation on the standard invariant, homotopy equivalence of
    the lens spaces, and isometry of their linking forms.  The verdicts
    must agree; a split raises AssertionError.
    """
    r1 = lens_times_circle_record(p, q1)
    r2 = lens_times_circle_record(p, q2)
    kreck, kreck_cert = kreck_equivalent(r1, r2)

    inv1 = fundamental_class_invariant(LensSpace(p, q1))
    inv2 = fundamental_class_invariant(LensSpace(p, q2))
    orbit, orbit_cert = _signed_square_relation(p, inv1, inv2)

    homot, r_wit, sign_wit = lens_homotopy_equivalent(p, q1, q2)
    homot_cert = {"r": r_wit, "sign": sign_wit} if homot else None

    link, u_wit, lsign = linking_isometric(
        linking_form(LensSpace(p, q1)), linking_form(LensSpace(p, q2))
    )
    link_cert = {"unit": u_wit, "sign": lsign} if link else None

    verdicts = {
        "kreck_orbit": kreck,
        "class_square_orbit": orbit,
        "lens_homotopy": homot,
        "linking_form": link,
    }
    if len(set(verdicts.values())) != 1:
        raise AssertionError("criteria disagree: %r" % verdicts)
    return LensFamilyReport(
        p=p,
        q1=q1,
        q2=q2,
        equivalent=kreck,
        verdicts=verdicts,
        certificates={
            "kreck_orbit": kreck_cert,
            "class_square_orbit": orbit_cert,
            "lens_homotopy": homot_cert,
            "linking_form": link_cert,
        },
    )


def _signed_square_relation(p, a, b):
    """Is b = +-r^2 a mod p for some unit r?  Returns (bool, cert)."""
    for r in range(1, max(p, 2)):
        if _gcd(r, p) != 1:
            continue
        if (r * r * a - b) % p == 0:
            return True, {"r": r, "sign": 1}
        if (r * r * a + b) % p == 0:
            return True, {"r": r, "sign": -1}
    return False, None


@dataclass
class LensFamilyReport:
    p: int
    q1: int
    q2: int
    equivalent: bool
    verdicts: dict
    certificates: dict


def classify_aspherical(d3_aug, inv):
    """Candidate absolute twisting numbers from observed invariants.

    d3_aug presents the family; inv is the observed abelian group of the
    twisted quotient of pi_2.  Delegates to the torsion matcher; the
    returned set is {|m|}, the ambiguous {0, 1}, or empty.
    """
    fam = EmFamily.from_matrix(d3_aug)
    return recover_m(inv, fam)


def aspherical_equivalent(d3_aug, inv1, inv2, proj1=None, proj2=None):
    """Same stable class over an aspherical 1-type.

    Candidate sets must be equal singletons, or both the ambiguous
    {0, 1} with matching externally supplied projectivity flags.
    """
    s1 = classify_aspherical(d3_aug, inv1)
    s2 = classify_aspherical(d3_aug, inv2)
    if not s1 or not s2:
        raise HypothesisViolated("observed invariants fit no twisting number")
    if s1 != s2:
        return False, {"candidates": (sorted(s1), sorted(s2))}
    if len(s1) == 1:
        return True, {"m": next(iter(s1))}
    if proj1 is None or proj2 is None:
        raise HypothesisViolated(
            "ambiguous {0,1} case needs projectivity flags to decide"
        )
    same = bool(proj1) == bool(proj2)
    return same, {"candidates": sorted(s1), "projectivity": (bool(proj1), bool(proj2))}


@dataclass
class HopfReport:
    """Order bookkeeping for the low-degree exact sequence of a closed
    4-complex over a finite group.

    groups maps labels to invariants; checks maps check names to bools;
    notes carries skipped checks (infinite groups make some divisibility
    statements empty).
    """

    groups: dict
    checks: dict
    maps: dict
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(self.checks.values())


def hopf_check(c):
    """Verify the order bookkeeping of the sequence tying a closed
    4-complex to its group: surjectivity at the bottom and divisibility
    of kernel and cokernel orders against the flanking coefficient
    groups.
    """
    group = c.group
    if not group.is_finite:
        raise InfiniteGroup("the sequence check needs a finite group")
    w = c.w
    res = resolution_for(group)
    cmap = _chain_map_to_resolution(c, res)
    pi2_inv, pi2_mod = homology_Lambda(c, 2)

    groups = {
        "H4_M": homology_Zw(c, 4),
        "H4_pi": group_homology(group, w, 4),
        "H1_pi_pi2": module_homology(res, w, pi2_mod, 1),
        "H3_M": homology_Zw(c, 3),
        "H3_pi": group_homology(group, w, 3),
        "H0_pi_pi2": module_homology(res, w, pi2_mod, 0),
        "H2_M": homology_Zw(c, 2),
        "H2_pi": group_homology(group, w, 2),
    }

    maps = {}
    for deg in (2, 3, 4):
        maps[deg] = _induced_on_homology(c, res, cmap, w, deg)

    checks = {}
    notes = []
    checks["H2_surjective"] = maps[2].surjective
    _divides(checks, notes, "coker4_divides_H1pi", maps[4].cokernel, groups["H1_pi_pi2"])
    _divides(checks, notes, "ker3_divides_H1pi", maps[3].kernel, groups["H1_pi_pi2"])
    _divides(checks, notes, "coker3_divides_H0pi", maps[3].cokernel, groups["H0_pi_pi2"])
    _divides(checks, notes, "ker2_divides_H0pi", maps[2].kernel, groups["H0_pi_pi2"])
    if groups["H1_pi_pi2"].is_trivial:
        # with nothing to land in, the degree-4 map must be onto
        checks["H4_surjective"] = maps[4].surjective
    return HopfReport(groups=groups, checks=checks, maps=maps, notes=notes)


def _divides(checks, notes, name, small, big):
    bo = big.order()
    if bo is None:
        notes.append("%s: skipped, comparison group infinite" % name)
        return
    so = small.order()
    if so is None:
        checks[name] = False
        notes.append("%s: finite group cannot bound an infinite piece" % name)
        return
    checks[name] = bo % so == 0


def _chain_map_to_resolution(c, res):
    """Lift the identity of Z to a chain map from the complex into the
    resolution, one degree at a time by solving over the ring."""
    from fourfold.groupring import RingMatrix, ring_one
    from fourfold.groupring import ring_matrix_from_columns, deexpand_vector
    from fourfold.intmat import solve_integer

    group = c.group
    n = group.order()
    if c.ranks[0] != 1:
        raise DimensionMismatch("complex needs a single generator in degree 0")
    cmap = {0: RingMatrix.identity(group, 1)}
    top = min(c.top_degree, res.bound - 1)
    for i in range(1, top + 1):
        prev = cmap[i - 1]
        rhs = prev * c.d(i)
        delta = res.d(i)
        dexp = delta.expand()
        cols = []
        rhs_exp = rhs.expand()
        for j in range(c.ranks[i]):
            target = rhs_exp.column(j * n)
            sol = solve_integer(dexp, target)
            if sol is None:
                raise HypothesisViolated(
                    "no chain lift in degree %d; resolution not exact there" % i
                )
            cols.append(deexpand_vector(group, sol, res.ranks[i]))
        cmap[i] = ring_matrix_from_columns(group, cols, res.ranks[i])
    return cmap


def _induced_on_homology(c, res, cmap, w, deg):
    """Induced map on degree-deg twisted homology, as subquotient data."""
    z1 = kernel_basis(c.d(deg).augment(w))
    if deg + 1 <= c.top_degree:
        b1 = c.d(deg + 1).augment(w)
    else:
        b1 = IntMatrix.zeros(c.ranks[deg], 0)
    z2 = kernel_basis(res.d(deg).augment(w))
    b2 = res.d(deg + 1).augment(w)
    amap = cmap[deg].augment(w)
    return induced_map_invariants(amap, z1, b1, z2, b2)
