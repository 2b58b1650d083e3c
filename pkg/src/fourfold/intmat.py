"""Exact integer matrices, Smith normal form and lattice arithmetic.

All entries are Python ints, so intermediate growth is handled by
arbitrary precision arithmetic; nothing here ever rounds.  The Smith
reduction itself lives in _snf_py / _snf_cy and is chosen by _kernels.
"""

from dataclasses import dataclass

from fourfold import _kernels
from fourfold.errors import DimensionMismatch

__all__ = [
    "IntMatrix",
    "SmithForm",
    "AbelianInvariants",
    "smith_normal_form",
    "rank",
    "cokernel_invariants",
    "kernel_basis",
    "solve_integer",
    "solve_with_kernel",
    "subgroup_membership",
    "column_span_basis",
    "preimage_kernel",
    "quotient_invariants",
    "homology_invariants",
    "SubquotientMap",
    "induced_map_invariants",
    "hstack",
    "vstack",
]


class IntMatrix:
    """Dense integer matrix, row major.  Treated as immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        if len(data) != rows:
            raise DimensionMismatch("expected %d rows, got %d" % (rows, len(data)))
        for r in data:
            if len(r) != cols:
                raise DimensionMismatch("ragged row in %dx%d matrix" % (rows, cols))
        self.rows = rows
        self.cols = cols
        self.data = [list(r) for r in data]

    @classmethod
    def from_rows(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns, rows):
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(
            self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch("vector length %d, expected %d" % (len(v), self.cols))
        return tuple(sum(r[j] * v[j] for j in range(self.cols)) for r in self.data)

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch("%dx%d times %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            arow = self.data[i]
            orow = out[i]
            for k in range(self.cols):
                a = arow[k]
                if a:
                    brow = other.data[k]
                    for j in range(other.cols):
                        b = brow[j]
                        if b:
                            orow[j] += a * b
        return IntMatrix(self.rows, other.cols, out)

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in r] for r in self.data])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)

    def is_identity(self):
        return self.rows == self.cols and all(
            self.data[i][j] == (1 if i == j else 0) for i in range(self.rows) for j in range(self.cols)
        )

    def __repr__(self):
        return "IntMatrix(%d, %d, %r)" % (self.rows, self.cols, self.data)


def hstack(a, b):
    if a.rows != b.rows:
        raise DimensionMismatch("hstack of %d and %d rows" % (a.rows, b.rows))
    return IntMatrix(a.rows, a.cols + b.cols, [ra + rb for ra, rb in zip(a.data, b.data)])


def vstack(a, b):
    if a.cols != b.cols:
        raise DimensionMismatch("vstack of %d and %d cols" % (a.cols, b.cols))
    return IntMatrix(a.rows + b.rows, a.cols, a.data + b.data)


@dataclass(frozen=True)
class AbelianInvariants:
    """A finitely generated abelian group: Z^free_rank + sum Z/torsion[i].

    torsion entries are > 1 and form a divisibility chain; unit factors
    are dropped, so the representation is canonical and comparable.
    """

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion %r is not a divisibility chain" % (self.torsion,))

    @classmethod
    def from_diag(cls, free_rank, diag):
        """Canonicalize an unordered list of cyclic orders (> 0)."""
        entries = [d for d in diag if d != 1]
        if not entries:
            return cls(free_rank, ())
        m = IntMatrix(len(entries), len(entries), [[entries[i] if i == j else 0 for j in range(len(entries))] for i in range(len(entries))])
        inv = cokernel_invariants(m)
        return cls(free_rank + inv.free_rank, inv.torsion)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def direct_sum(self, other):
        return AbelianInvariants.from_diag(self.free_rank + other.free_rank, list(self.torsion) + list(other.torsion))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % t for t in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP_INVARIANTS = AbelianInvariants(0, ())


@dataclass(frozen=True)
class SmithForm:
    """U * A * V == D with U, V unimodular and D = diag(diag) padded by zeros."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: tuple
    Uinv: IntMatrix
    Vinv: IntMatrix


def smith_normal_form(A):
    """Smith normal form with unimodular transforms.

    Returns a SmithForm whose diag entries are positive and satisfy
    diag[i] | diag[i+1].  Deterministic: the pivot is always the entry of
    minimal absolute value, ties broken by position.
    """
    m, n = A.rows, A.cols
    d = [list(r) for r in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    _kernels.snf_inplace(d, u, uinv, v, vinv, m, n)
    diag = []
    for i in range(min(m, n)):
        if d[i][i]:
            diag.append(d[i][i])
        else:
            break
    return SmithForm(
        U=IntMatrix(m, m, u),
        D=IntMatrix(m, n, d),
        V=IntMatrix(n, n, v),
        diag=tuple(diag),
        Uinv=IntMatrix(m, m, uinv),
        Vinv=IntMatrix(n, n, vinv),
    )


def rank(A):
    return len(smith_normal_form(A).diag)


def cokernel_invariants(A):
    """Invariants of Z^rows / column-span(A)."""
    s = smith_normal_form(A)
    free = A.rows - len(s.diag)
    torsion = tuple(d for d in s.diag if d > 1)
    return AbelianInvariants(free, torsion)


def kernel_basis(A):
    """Columns form a basis of ker(A) in Z^cols.

    The kernel of an integer matrix is a saturated sublattice and the
    returned columns are a basis of it (they are columns of a unimodular
    transform, hence primitive).
    """
    s = smith_normal_form(A)
    r = len(s.diag)
    cols = [s.V.column(j) for j in range(r, A.cols)]
    return IntMatrix.from_columns(cols, A.cols)


def solve_integer(A, b):
    """One integer solution of A x = b, or None.

    The solution returned is the one with zero free coordinates in the
    Smith-reduced coordinate system, which makes it deterministic.
    """
    x, _ = _solve(A, b, want_kernel=False)
    return x


def solve_with_kernel(A, b):
    """(particular solution or None, kernel basis of A)."""
    return _solve(A, b, want_kernel=True)


def _solve(A, b, want_kernel):
    if len(b) != A.rows:
        raise DimensionMismatch("rhs length %d, expected %d" % (len(b), A.rows))
    s = smith_normal_form(A)
    r = len(s.diag)
    c = s.U.mul_vec(b)
    y = [0] * A.cols
    ok = True
    for i in range(r):
        q, rem = divmod(c[i], s.diag[i])
        if rem:
            ok = False
            break
        y[i] = q
    if ok:
        for i in range(r, A.rows):
            if c[i]:
                ok = False
                break
    x = tuple(s.V.mul_vec(y)) if ok else None
    if not want_kernel:
        return x, None
    kb = IntMatrix.from_columns([s.V.column(j) for j in range(r, A.cols)], A.cols)
    return x, kb


def subgroup_membership(gens, v):
    """Is v in the subgroup of Z^rows generated by the columns of gens?"""
    return solve_integer(gens, v) is not None


def column_span_basis(A):
    """A basis (as columns) of the lattice spanned by the columns of A."""
    s = smith_normal_form(A)
    r = len(s.diag)
    cols = []
    for i in range(r):
        d = s.diag[i]
        cols.append(tuple(d * x for x in s.Uinv.column(i)))
    return IntMatrix.from_columns(cols, A.rows)


def preimage_kernel(M, L):
    """Basis of the lattice {x : M x in column-span(L)}.

    M is a x b, L is a x l; the result is b x s with basis columns.
    """
    stacked = hstack(M, L)
    k = kernel_basis(stacked)
    proj = IntMatrix(M.cols, k.cols, k.data[: M.cols])
    return column_span_basis(proj)


def quotient_invariants(big_gens, sub_gens):
    """Invariants of span(big_gens) / span(sub_gens).

    Requires span(sub_gens) <= span(big_gens); raises otherwise since a
    failed exact division here means a logic error upstream.
    """
    basis = column_span_basis(big_gens)
    cols = []
    for j in range(sub_gens.cols):
        x = solve_integer(basis, sub_gens.column(j))
        if x is None:
            raise ValueError("sub lattice is not contained in the big lattice")
        cols.append(x)
    rel = IntMatrix.from_columns(cols, basis.cols)
    return cokernel_invariants(rel)


class SubquotientMap:
    """Kernel and cokernel invariants of an induced map on subquotients.

    The domain is span(z1)/span(b1) inside Z^n1, the codomain
    span(z2)/span(b2) inside Z^n2, and the map is induced by an integer
    matrix that carries z1 into span(z2) and b1 into span(b2).
    """

    def __init__(self, kernel, cokernel, domain, codomain):
        self.kernel = kernel
        self.cokernel = cokernel
        self.domain = domain
        self.codomain = codomain

    @property
    def surjective(self):
        return self.cokernel.is_trivial

    @property
    def injective(self):
        return self.kernel.is_trivial


def induced_map_invariants(A, z1, b1, z2, b2):
    """Induced map span(z1)/span(b1) -> span(z2)/span(b2) under x -> A x.

    Checks that A maps the domain data into the codomain data and
    returns kernel and cokernel invariants.
    """
    imgs = []
    for j in range(z1.cols):
        img = A.mul_vec(z1.column(j))
        if not subgroup_membership(hstack(z2, b2), img):
            raise ValueError("map does not carry cycles into cycles")
        imgs.append(img)
    img_mat = IntMatrix.from_columns(imgs, A.rows)
    for j in range(b1.cols):
        img = A.mul_vec(b1.column(j))
        if not subgroup_membership(b2, img):
            raise ValueError("map does not carry boundaries into boundaries")
    coker = quotient_invariants(hstack(z2, b2), hstack(img_mat, b2))
    # kernel: solutions of A z1 y in span(b2), modulo b1 written in z1 coords
    ker_lattice = preimage_kernel(img_mat, b2)
    sub_cols = []
    for j in range(b1.cols):
        x = solve_integer(z1, b1.column(j))
        if x is None:
            raise ValueError("sub lattice is not inside the cycle lattice")
        sub_cols.append(x)
    sub = IntMatrix.from_columns(sub_cols, z1.cols)
    kernel = quotient_invariants(ker_lattice, sub)
    domain = quotient_invariants(hstack(z1, b1), b1)
    codomain = quotient_invariants(hstack(z2, b2), b2)
    return SubquotientMap(kernel, coker, domain, codomain)


def homology_invariants(d_out, d_in, dim):
    """ker(d_out) / im(d_in) at a chain group of rank dim.

    d_out maps the group down (dim columns), d_in maps into it (dim
    rows); either may be None for a zero map.  Requires d_out . d_in = 0.
    """
    if d_out is None:
        z = IntMatrix.identity(dim)
    else:
        if d_out.cols != dim:
            raise DimensionMismatch("boundary out has %d cols, chain rank %d" % (d_out.cols, dim))
        z = kernel_basis(d_out)
    if d_in is None:
        x = IntMatrix.zeros(z.cols, 0)
    else:
        if d_in.rows != dim:
            raise DimensionMismatch("boundary in has %d rows, chain rank %d" % (d_in.rows, dim))
        cols = []
        for j in range(d_in.cols):
            sol = solve_integer(z, d_in.column(j))
            if sol is None:
                raise ValueError("image is not contained in the kernel; not a complex")
            cols.append(sol)
        x = IntMatrix.from_columns(cols, z.cols)
    return cokernel_invariants(x)
