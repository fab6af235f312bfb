"""Exact rational arithmetic and integer lattice algebra.

Everything downstream (polyhedra, balancing checks, divisor weights) reduces
to exact linear algebra over Q and over Z.  Vectors are plain tuples,
matrices are tuples of row tuples; all scalars are either Python ints or
rationals of type ``QQ``.

``QQ`` is ``gmpy2.mpq`` when available (considerably faster) and falls back
to ``fractions.Fraction``.  Both are exact, hashable and normalized to
lowest terms with positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a normal install requirement
    from fractions import Fraction as QQ

IntVector = tuple  # tuple of ints
RatVector = tuple  # tuple of QQ / int
IntMatrix = tuple  # tuple of int row tuples


def rat(x) -> "QQ":
    """Coerce an int, rational or 'p/q' string to an exact rational."""
    if isinstance(x, str):
        return QQ(x)
    return QQ(x)


def rat_parts(x) -> tuple[int, int]:
    """(numerator, denominator) of a rational or int, as plain ints."""
    q = QQ(x)
    return int(q.numerator), int(q.denominator)


def dot(a, b):
    """Inner product of two equal-length vectors."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive_part(v: IntVector) -> IntVector:
    """Divide an integer vector by the gcd of its coordinates.

    The result generates the same ray as ``v`` and has coprime coordinates.
    Raises on the zero vector, which spans no ray.
    """
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("no primitive part of zero")
    return tuple(int(x) // g for x in v)


def clear_denominators(v) -> IntVector:
    """Scale a rational vector by the positive lcm of denominators."""
    m = 1
    for x in v:
        d = int(QQ(x).denominator)
        m = m * d // gcd(m, d)
    return tuple(int(QQ(x) * m) for x in v)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m):
    return tuple(zip(*m))


def mat_rank(rows) -> int:
    """Rank of a matrix with int/rational entries, by Gaussian elimination."""
    work = [[QQ(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def solve_rational(rows, rhs):
    """One rational solution x of ``rows @ x = rhs``, or None if inconsistent.

    ``rows`` is a list of coefficient rows; the system may be under- or
    overdetermined.  Free variables are set to zero.
    """
    m = [[QQ(x) for x in row] + [QQ(r)] for row, r in zip(rows, rhs)]
    if not m:
        return ()
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        m[rank] = [a / pv for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [QQ(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = m[r][ncols]
    return tuple(x)


def mat_det(rows):
    """Exact determinant of a square int/rational matrix."""
    n = len(rows)
    work = [[QQ(x) for x in row] for row in rows]
    det = QQ(1)
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            return QQ(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        pv = work[col][col]
        det *= pv
        for i in range(col + 1, n):
            if work[i][col] != 0:
                f = work[i][col] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return det


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form with unimodular transform.

    Returns ``(H, U)`` with ``H = U @ m``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and entries above each pivot reduced
    to ``[0, pivot)``.  The rows of ``H`` generate the same lattice as the
    rows of ``m``.
    """
    h = [[int(x) for x in row] for row in m]
    nrows = len(h)
    ncols = len(h[0]) if nrows else 0
    u = [list(row) for row in identity_matrix(nrows)]
    r = 0
    for col in range(ncols):
        # Euclid on column entries below the current pivot row.
        while True:
            nz = [i for i in range(r, nrows) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            if i0 != r:
                h[r], h[i0] = h[i0], h[r]
                u[r], u[i0] = u[i0], u[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][col] != 0:
                    q = h[i][col] // h[r][col]
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if r < nrows and h[r][col] != 0:
            if h[r][col] < 0:
                h[r] = [-a for a in h[r]]
                u[r] = [-a for a in u[r]]
            for i in range(r):
                q = h[i][col] // h[r][col]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
            if r == nrows:
                break
    return tuple(tuple(row) for row in h), tuple(tuple(row) for row in u)


def hnf_basis(rows) -> tuple[IntVector, ...]:
    """Nonzero rows of the HNF: the canonical basis of the row lattice."""
    if not rows:
        return ()
    h, _ = hermite_normal_form(rows)
    return tuple(row for row in h if any(x != 0 for x in row))


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``S = U @ m @ V`` with unimodular ``U``, ``V``.

    ``S`` is diagonal with nonnegative entries satisfying d_1 | d_2 | ... .
    """
    s = [[int(x) for x in row] for row in m]
    nrows = len(s)
    ncols = len(s[0]) if nrows else 0
    u = [list(row) for row in identity_matrix(nrows)]
    v = [list(row) for row in identity_matrix(ncols)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        s[dst] = [a + q * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(nrows, ncols):
        # Find the entry of least magnitude in the remaining block.
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            reduced = True
            for i in range(t + 1, nrows):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t] != 0:
                        swap_rows(t, i)
                        reduced = False
            for j in range(t + 1, ncols):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        reduced = False
            if reduced and all(s[i][t] == 0 for i in range(t + 1, nrows)) \
                    and all(s[t][j] == 0 for j in range(t + 1, ncols)):
                break
        # Enforce the divisibility chain on the remaining block.
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if s[i][j] % s[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
        t += 1
    return (tuple(tuple(row) for row in s),
            tuple(tuple(row) for row in u),
            tuple(tuple(row) for row in v))


def integer_solve(rows, rhs):
    """One integer solution x of ``rows @ x = rhs``, or None.

    Solves via the Smith decomposition, so existence is decided exactly.
    """
    if not rows:
        return ()
    ncols = len(rows[0])
    s, u, v = smith_normal_form(rows)
    ub = mat_vec(u, rhs)
    y = [0] * ncols
    r = min(len(rows), ncols)
    for i in range(len(rows)):
        d = s[i][i] if i < r else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            if i < ncols:
                y[i] = ub[i] // d
    return mat_vec(v, y)


def kernel_lattice(rows, ncols: int) -> tuple[IntVector, ...]:
    """HNF basis of ``{x in Z^ncols : rows @ x = 0}``.

    The kernel of an integer matrix is a saturated sublattice, so this basis
    also spans the rational kernel.
    """
    if not rows:
        return hnf_basis(identity_matrix(ncols)) if ncols else ()
    s, _, v = smith_normal_form(rows)
    r = 0
    for i in range(min(len(rows), ncols)):
        if s[i][i] != 0:
            r += 1
    cols = transpose(v)
    return hnf_basis(cols[r:]) if r < ncols else ()


def subspace_lattice(spanning, ambient_dim: int) -> "LatticeBasis":
    """Basis of (rational span of the input vectors) intersected with Z^n.

    Input vectors may be rational; the result is the saturated lattice of
    the spanned subspace.  Computed as the kernel of the kernel: the integer
    kernel of a matrix is saturated, and applying it twice recovers the
    span.
    """
    int_rows = [clear_denominators(v) for v in spanning]
    int_rows = [r for r in int_rows if any(x != 0 for x in r)]
    if not int_rows:
        return LatticeBasis(ambient_dim, ())
    perp = kernel_lattice(int_rows, ambient_dim)
    basis = kernel_lattice(perp, ambient_dim) if perp else hnf_basis(identity_matrix(ambient_dim))
    return LatticeBasis(ambient_dim, basis)


@dataclass(frozen=True)
class LatticeBasis:
    """A saturated sublattice of Z^n, stored by its canonical HNF basis.

    Two bases represent the same lattice exactly when their HNF rows agree,
    so equality of this dataclass is lattice equality.
    """

    ambient_dim: int
    vectors: tuple

    def __post_init__(self):
        canon = hnf_basis(self.vectors) if self.vectors else ()
        if len(canon) != len(self.vectors):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", canon)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def contains(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None

    def coordinates(self, v):
        """Integer coordinates of v in this basis, or None if v is outside."""
        if not self.vectors:
            return () if all(x == 0 for x in v) else None
        sol = solve_rational(list(transpose(self.vectors)), v)
        if sol is None:
            return None
        coords = []
        for c in sol:
            q = QQ(c)
            if q.denominator != 1:
                return None
            coords.append(int(q.numerator))
        # solve_rational zero-fills free variables; ranks match here since
        # basis vectors are independent, so the solution is unique.
        return tuple(coords)

    def spans_vector(self, v) -> bool:
        """Rational-span membership (ignores integrality)."""
        if not self.vectors:
            return all(x == 0 for x in v)
        return mat_rank(list(self.vectors) + [v]) == self.rank


def quotient_generator(sub: LatticeBasis, sup: LatticeBasis) -> IntVector:
    """A vector of ``sup`` generating the rank-one quotient ``sup/sub``.

    Requires ``sub`` to be a corank-one sublattice of ``sup`` with
    torsion-free quotient (always the case for saturated lattices of nested
    subspaces).  The result is unique up to sign and up to adding elements
    of ``sub``.
    """
    if sup.rank != sub.rank + 1:
        raise ValueError(f"rank mismatch: sub rank {sub.rank}, super rank {sup.rank}")
    r = sup.rank
    coords = []
    for v in sub.vectors:
        c = sup.coordinates(v)
        if c is None:
            raise ValueError("sub is not contained in super")
        coords.append(c)
    if r == 1:
        return sup.vectors[0]
    # A primitive covector w on Z^r vanishing on the coordinate lattice of
    # sub; the quotient is torsion-free iff those coordinates are saturated.
    sat = kernel_lattice(kernel_lattice(coords, r), r)
    if hnf_basis(coords) != sat:
        raise ValueError("torsion in quotient: sublattice is not saturated")
    w = kernel_lattice(coords, r)
    assert len(w) == 1
    w = primitive_part(w[0])
    u_coord = _solve_unimodular(w)
    out = [0] * sup.ambient_dim
    for c, b in zip(u_coord, sup.vectors):
        out = [a + c * x for a, x in zip(out, b)]
    return tuple(out)


def _solve_unimodular(w):
    """Integer u with w . u = 1, for a primitive integer covector w."""
    sol = integer_solve([list(w)], (1,))
    if sol is None:
        raise ValueError("covector is not primitive")
    return sol


def lattice_index(matrix, source: LatticeBasis, target: LatticeBasis) -> int:
    """Index of the image of ``source`` under an integer map inside ``target``.

    ``matrix`` rows map ambient source coordinates to target coordinates.
    The index is |det| of the image basis written in target coordinates;
    a rank drop raises, since the quotient is then infinite.
    """
    if source.rank != target.rank:
        raise ValueError("rank mismatch between source and target lattices")
    if source.rank == 0:
        return 1
    rows = []
    for b in source.vectors:
        img = mat_vec(matrix, b)
        c = target.coordinates(img)
        if c is None:
            raise ValueError("image vector lies outside the target lattice")
        rows.append(c)
    d = mat_det(rows)
    if d == 0:
        raise ValueError("map not injective on lattice")
    return abs(int(d))
