"""Exact rational polyhedra in H-representation.

A :class:`Cell` is a nonempty rational polyhedron in R^n described by
integer-linear inequalities and equalities, with its dimension, a relative
interior point and the lattice of its direction space cached at
construction.  All geometric predicates are decided exactly with the
rational simplex; there is no vertex enumeration anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ._simplex import INFEASIBLE, OPTIMAL, lp_max
from .kernel import (
    QQ,
    LatticeBasis,
    dot,
    kernel_lattice,
    rat_parts,
    vec_gcd,
)


class EmptyCellError(ValueError):
    """Raised when a constraint system has no solutions."""


@dataclass(frozen=True)
class AffineForm:
    """An affine functional a . x + c with integer linear part a.

    Used both as an inequality (meaning value >= 0) and as an equality
    (value == 0), depending on which list of a cell it sits in.
    """

    linear: tuple
    constant: object  # exact rational

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(int(x) for x in self.linear))
        object.__setattr__(self, "constant", QQ(self.constant))

    def value_at(self, point):
        return dot(self.linear, point) + self.constant

    def eval_direction(self, v):
        """Pairing with a direction vector (the constant does not enter)."""
        return dot(self.linear, v)

    def translate(self, v) -> "AffineForm":
        """The form describing the same locus shifted by v."""
        return AffineForm(self.linear, self.constant - dot(self.linear, v))

    def negated(self) -> "AffineForm":
        return AffineForm(tuple(-a for a in self.linear), -self.constant)

    def scaled_primitive(self) -> "AffineForm":
        """Divide by the gcd of the linear part (positive factor only)."""
        g = vec_gcd(self.linear)
        if g <= 1:
            return self
        return AffineForm(tuple(a // g for a in self.linear), self.constant / g)

    def sort_key(self):
        return (self.linear, rat_parts(self.constant))

    def __repr__(self):
        return f"AffineForm({self.linear}, {self.constant})"


def form_from_rational(linear, constant) -> AffineForm:
    """Scale a rational-coefficient form to integer linear part."""
    m = 1
    for x in linear:
        d = int(QQ(x).denominator)
        m = m * d // gcd(m, d)
    return AffineForm(tuple(int(QQ(x) * m) for x in linear), QQ(constant) * m)


def hyperplane_form(form: AffineForm) -> AffineForm | None:
    """Canonical representative of the hyperplane {form = 0}.

    Primitive linear part oriented so the first nonzero coefficient is
    positive; None if the form has zero linear part (no hyperplane).
    """
    f = form.scaled_primitive()
    lead = next((a for a in f.linear if a != 0), 0)
    if lead == 0:
        return None
    return f.negated().scaled_primitive() if lead < 0 else f


class Cell:
    """A nonempty rational polyhedron with cached geometry.

    Instances are immutable; build them through :meth:`try_from_constraints`
    or :meth:`from_constraints`.  The stored inequality list may contain
    redundant members: after construction every listed inequality is strict
    on the relative interior, which is all the predicates here rely on.
    The fully irredundant canonical system is computed lazily for
    :attr:`canonical_key`.
    """

    __slots__ = (
        "ambient_dim", "ineqs", "eqs", "dim", "interior_point",
        "direction_lattice", "_canonical", "_canonical_cell", "_faces",
        "_recession",
    )

    def __init__(self, ambient_dim, ineqs, eqs, dim, interior_point, direction_lattice):
        self.ambient_dim = ambient_dim
        self.ineqs = tuple(ineqs)
        self.eqs = tuple(eqs)
        self.dim = dim
        self.interior_point = tuple(QQ(x) for x in interior_point)
        self.direction_lattice = direction_lattice
        self._canonical = None
        self._canonical_cell = None
        self._faces = None
        self._recession = None

    # -- construction -----------------------------------------------------

    @classmethod
    def try_from_constraints(cls, ambient_dim, ineqs=(), eqs=()) -> "Cell | None":
        """Canonicalize a constraint system; None if it is infeasible.

        Detects implied equalities and migrates them to the equality list,
        then caches dimension, a relative interior point and the saturated
        lattice of the direction space.
        """
        cin, ceq = [], []
        seen = set()
        for f in ineqs:
            f = f.scaled_primitive()
            if all(a == 0 for a in f.linear):
                if f.constant < 0:
                    return None
                continue
            if f.sort_key() not in seen:
                seen.add(f.sort_key())
                cin.append(f)
        seen = set()
        for f in eqs:
            f = f.scaled_primitive()
            lead = next((a for a in f.linear if a != 0), 0)
            if lead == 0:
                if f.constant != 0:
                    return None
                continue
            if lead < 0:
                f = f.negated().scaled_primitive()
            if f.sort_key() not in seen:
                seen.add(f.sort_key())
                ceq.append(f)

        point, slack = _relint_lp(ambient_dim, cin, ceq)
        if point is None:
            return None
        if slack == 0:
            # Only inequalities tight at the best-slack witness can be
            # implied equalities; the rest are strict somewhere already.
            implied, strict = [], []
            for g in cin:
                if g.value_at(point) == 0 and _max_capped(ambient_dim, g, cin, ceq) == 0:
                    implied.append(g)
                else:
                    strict.append(g)
            ceq = ceq + implied
            cin = strict
            point, slack = _relint_lp(ambient_dim, cin, ceq)
            assert point is not None and slack > 0
        lattice = LatticeBasis(ambient_dim, kernel_lattice([f.linear for f in ceq], ambient_dim))
        return cls(ambient_dim, cin, ceq, lattice.rank, point, lattice)

    @classmethod
    def from_constraints(cls, ambient_dim, ineqs=(), eqs=()) -> "Cell":
        cell = cls.try_from_constraints(ambient_dim, ineqs, eqs)
        if cell is None:
            raise EmptyCellError("empty cell")
        return cell

    @classmethod
    def full_space(cls, n) -> "Cell":
        return cls(n, (), (), n, (QQ(0),) * n,
                   LatticeBasis(n, kernel_lattice([], n)))

    def _replace_geometry(self, ineqs=None, eqs=None, interior_point=None):
        """Same-dimension variant sharing this cell's affine hull data."""
        return Cell(
            self.ambient_dim,
            self.ineqs if ineqs is None else ineqs,
            self.eqs if eqs is None else eqs,
            self.dim,
            self.interior_point if interior_point is None else interior_point,
            self.direction_lattice,
        )

    # -- predicates -------------------------------------------------------

    def contains_point(self, p) -> bool:
        return (all(f.value_at(p) == 0 for f in self.eqs)
                and all(f.value_at(p) >= 0 for f in self.ineqs))

    def relative_interior_contains(self, p) -> bool:
        # Valid with redundant inequalities present: after implied-equality
        # migration every listed inequality is strict on the interior.
        return (all(f.value_at(p) == 0 for f in self.eqs)
                and all(f.value_at(p) > 0 for f in self.ineqs))

    def is_cone(self) -> bool:
        origin = (0,) * self.ambient_dim
        return self.contains_point(origin) and self.same_set(self.recession_cone())

    # -- derived geometry -------------------------------------------------

    def faces_of_codim_one(self) -> tuple:
        """All faces of dimension dim - 1, deduplicated."""
        if self._faces is None:
            found = {}
            for g in self.ineqs:
                face = Cell.try_from_constraints(
                    self.ambient_dim, self.ineqs, self.eqs + (g,))
                if face is not None and face.dim == self.dim - 1:
                    found.setdefault(face.canonical_key, face)
            self._faces = tuple(found[k] for k in sorted(found))
        return self._faces

    def recession_cone(self) -> "Cell":
        """Directions v with cell + R_{>=0} v inside the cell."""
        if self._recession is None:
            self._recession = Cell.from_constraints(
                self.ambient_dim,
                [AffineForm(f.linear, 0) for f in self.ineqs],
                [AffineForm(f.linear, 0) for f in self.eqs])
        return self._recession

    def tangent_cone(self, p) -> "Cell":
        """Cone of directions entering the cell at a point of it."""
        if not self.contains_point(p):
            raise ValueError("tangent cone at a point outside the cell")
        tight = [AffineForm(f.linear, 0) for f in self.ineqs if f.value_at(p) == 0]
        eqs = [AffineForm(f.linear, 0) for f in self.eqs]
        return Cell.from_constraints(self.ambient_dim, tight, eqs)

    def translate(self, v) -> "Cell":
        return Cell(
            self.ambient_dim,
            tuple(f.translate(v) for f in self.ineqs),
            tuple(f.translate(v) for f in self.eqs),
            self.dim,
            tuple(QQ(a) + QQ(b) for a, b in zip(self.interior_point, v)),
            self.direction_lattice,
        )

    # -- canonical form ---------------------------------------------------

    @property
    def canonical_key(self):
        """Hashable key equal for two cells iff they are the same set."""
        if self._canonical is None:
            self._canonical = self._canonicalize()
        return self._canonical

    def _canonicalize(self):
        eq_rows = _rref_affine([(f.linear, f.constant) for f in self.eqs], self.ambient_dim)
        canon_eqs = tuple(form_from_rational(lin, c) for lin, c in eq_rows)
        reduced = {}
        for g in self.ineqs:
            h = _reduce_mod_rows(g, eq_rows)
            reduced.setdefault(h.sort_key(), h)
        candidates = [reduced[k] for k in sorted(reduced)]
        kept = list(candidates)
        for g in candidates:
            others = [h for h in kept if h is not g]
            if _min_capped(self.ambient_dim, g, others, list(canon_eqs)) >= 0:
                kept.remove(g)
        canon_ineqs = tuple(sorted(kept, key=AffineForm.sort_key))
        return (
            self.ambient_dim,
            self.dim,
            tuple(f.sort_key() for f in canon_eqs),
            tuple(f.sort_key() for f in canon_ineqs),
        )

    def canonical_cell(self) -> "Cell":
        """The same set with irredundant, canonically reduced constraints."""
        if self._canonical_cell is None:
            n, _, eq_keys, in_keys = self.canonical_key
            cell = self._replace_geometry(
                ineqs=tuple(AffineForm(lin, QQ(p, q)) for lin, (p, q) in in_keys),
                eqs=tuple(AffineForm(lin, QQ(p, q)) for lin, (p, q) in eq_keys),
            )
            cell._canonical = self._canonical
            cell._canonical_cell = cell
            self._canonical_cell = cell
        return self._canonical_cell

    def same_set(self, other: "Cell") -> bool:
        return self.canonical_key == other.canonical_key

    def __repr__(self):
        return (f"Cell(n={self.ambient_dim}, dim={self.dim}, "
                f"{len(self.ineqs)} ineqs, {len(self.eqs)} eqs)")


# -- LP helpers -----------------------------------------------------------


def _relint_lp(n, ineqs, eqs):
    """Point with all inequalities at slack >= t0 for the best t0 <= 1.

    Returns (point, t0) or (None, None) when infeasible.  t0 > 0 certifies
    that no inequality is an implied equality and the point is relatively
    interior.
    """
    lp_ineqs = []
    for f in ineqs:
        lp_ineqs.append((tuple(f.linear) + (-1,), -f.constant))
    lp_ineqs.append(((0,) * n + (-1,), -1))  # t0 <= 1
    lp_eqs = [(tuple(f.linear) + (0,), -f.constant) for f in eqs]
    obj = (0,) * n + (1,)
    res = lp_max(n + 1, obj, ineqs=lp_ineqs, eqs=lp_eqs)
    if res.status == INFEASIBLE or (res.status == OPTIMAL and res.value < 0):
        # A negative best slack means the relaxed system only meets the
        # constraints short of their boundaries: the cell is empty.
        return None, None
    assert res.status == OPTIMAL
    return res.point[:n], res.value


def _max_capped(n, form, ineqs, eqs, cap=1):
    """min(max(form), cap) over the system, via an auxiliary variable.

    Always feasible and bounded when the base system is feasible, which
    keeps the probe robust even when the form exceeds the cap everywhere.
    """
    lp_ineqs = [(tuple(f.linear) + (0,), -f.constant) for f in ineqs]
    lp_ineqs.append((tuple(form.linear) + (-1,), -form.constant))
    lp_ineqs.append(((0,) * n + (-1,), -cap))
    lp_eqs = [(tuple(f.linear) + (0,), -f.constant) for f in eqs]
    res = lp_max(n + 1, (0,) * n + (1,), ineqs=lp_ineqs, eqs=lp_eqs)
    assert res.status == OPTIMAL
    return res.value


def _min_capped(n, form, ineqs, eqs, cap=-1):
    """min(form) over the system, with the objective capped below."""
    return -_max_capped(n, form.negated(), ineqs, eqs, cap=-cap)


def strict_point(cell, form) -> tuple | None:
    """A point of the cell with form > 0, or None if form <= 0 on the cell."""
    p = cell.interior_point
    basis = cell.direction_lattice.vectors
    d = len(basis)
    lp_ineqs = []
    for f in cell.ineqs:
        lp_ineqs.append((tuple(f.eval_direction(b) for b in basis) + (0,), -f.value_at(p)))
    fc = tuple(form.eval_direction(b) for b in basis)
    lp_ineqs.append((fc + (-1,), -form.value_at(p)))
    lp_ineqs.append(((0,) * d + (-1,), -1))
    res = lp_max(d + 1, (0,) * d + (1,), ineqs=lp_ineqs)
    assert res.status == OPTIMAL
    if res.value <= 0:
        return None
    t = res.point[:d]
    return tuple(QQ(pi) + sum(QQ(tj) * QQ(b[i]) for tj, b in zip(t, basis))
                 for i, pi in enumerate(p))


def form_nonnegative_on(cell, form) -> bool:
    """Exact validity of form >= 0 over the cell."""
    return strict_point(cell, form.negated()) is None


def form_vanishes_on(cell, form) -> bool:
    """Exact validity of form == 0 over the cell."""
    return (form.value_at(cell.interior_point) == 0
            and all(form.eval_direction(b) == 0 for b in cell.direction_lattice.vectors))


def cell_contains_cell(outer: Cell, inner: Cell) -> bool:
    """Set containment inner <= outer, decided constraint by constraint."""
    if outer.ambient_dim != inner.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for f in outer.eqs:
        if not form_vanishes_on(inner, f):
            return False
    for f in outer.ineqs:
        if not form_nonnegative_on(inner, f):
            return False
    return True


def _split_piece(cell, form) -> Cell | None:
    """The piece cell & {form >= 0} if it has the same dimension, else None.

    The LP certifies a point where every inequality of the cell and the new
    form are simultaneously strict, so the piece inherits the cell's affine
    hull, dimension and direction lattice unchanged.
    """
    p = cell.interior_point
    basis = cell.direction_lattice.vectors
    d = len(basis)
    lp_ineqs = []
    for f in list(cell.ineqs) + [form]:
        lp_ineqs.append((tuple(f.eval_direction(b) for b in basis) + (-1,), -f.value_at(p)))
    lp_ineqs.append(((0,) * d + (-1,), -1))
    res = lp_max(d + 1, (0,) * d + (1,), ineqs=lp_ineqs)
    if res.status == INFEASIBLE or res.value <= 0:
        return None
    t = res.point[:d]
    witness = tuple(QQ(pi) + sum(QQ(tj) * QQ(b[i]) for tj, b in zip(t, basis))
                    for i, pi in enumerate(p))
    return cell._replace_geometry(ineqs=cell.ineqs + (form,), interior_point=witness)


# -- operations on cells --------------------------------------------------


def canonicalize(cell: Cell) -> Cell:
    """Irredundant canonical description of the same point set."""
    return cell.canonical_cell()


def intersect(a: Cell, b: Cell) -> Cell | None:
    """Set intersection as a canonical cell, or None when empty."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Cell.try_from_constraints(a.ambient_dim, a.ineqs + b.ineqs, a.eqs + b.eqs)


def product_cell(a: Cell, b: Cell) -> Cell:
    """Cartesian product inside R^{n+m}; all cached data composes blockwise."""
    n, m = a.ambient_dim, b.ambient_dim

    def lift_a(f):
        return AffineForm(f.linear + (0,) * m, f.constant)

    def lift_b(f):
        return AffineForm((0,) * n + f.linear, f.constant)

    basis = tuple(v + (0,) * m for v in a.direction_lattice.vectors) + \
        tuple((0,) * n + v for v in b.direction_lattice.vectors)
    return Cell(
        n + m,
        tuple(lift_a(f) for f in a.ineqs) + tuple(lift_b(f) for f in b.ineqs),
        tuple(lift_a(f) for f in a.eqs) + tuple(lift_b(f) for f in b.eqs),
        a.dim + b.dim,
        a.interior_point + b.interior_point,
        LatticeBasis(n + m, basis),
    )


def collect_hyperplanes(cells) -> tuple:
    """Canonical forms of all hyperplanes supporting the given cells."""
    seen = {}
    for cell in cells:
        for f in cell.ineqs + cell.eqs:
            h = hyperplane_form(f)
            if h is not None:
                seen.setdefault(h.sort_key(), h)
    return tuple(seen[k] for k in sorted(seen))


def refine_cell(cell: Cell, forms) -> list:
    """Split a cell along every hyperplane {form = 0} of the arrangement.

    Returns the full-dimensional closed pieces; they tile the cell and each
    lies weakly on one side of every hyperplane of the arrangement.
    """
    pieces = [cell]
    for f in forms:
        out = []
        for c in pieces:
            if form_vanishes_on(c, f):
                out.append(c)
                continue
            val = f.value_at(c.interior_point)
            if val > 0:
                pos = c._replace_geometry(ineqs=c.ineqs + (f,))
                neg = _split_piece(c, f.negated())
            elif val < 0:
                pos = _split_piece(c, f)
                neg = c._replace_geometry(ineqs=c.ineqs + (f.negated(),))
            else:
                pos = _split_piece(c, f)
                neg = _split_piece(c, f.negated())
            if pos is not None:
                out.append(pos)
            if neg is not None:
                out.append(neg)
        pieces = out
    return pieces


def refine_by_arrangement(cells, forms) -> list:
    """Refine several cells by a common hyperplane arrangement.

    Equal pieces arising from overlapping input cells are deduplicated by
    their canonical constraint systems, so the arrangement may be any set
    of hyperplanes.  (The internal callers that key pieces by sign vectors
    instead always extend the arrangement by all defining forms of the
    inputs first, which makes the cheaper key faithful.)
    """
    out = {}
    for cell in cells:
        for piece in refine_cell(cell, forms):
            out.setdefault(piece.canonical_key, piece)
    return [out[k] for k in sorted(out)]


def sign_vector(cell: Cell, forms) -> tuple:
    """Signs of the arrangement forms on a cell lying weakly on one side.

    Only meaningful for pieces produced by refining along these forms: a
    zero at the interior point then certifies the form vanishes identically
    on the piece.
    """
    p = cell.interior_point
    out = []
    for f in forms:
        v = f.value_at(p)
        out.append(0 if v == 0 else (1 if v > 0 else -1))
    return tuple(out)


def linear_image_cell(matrix, cell: Cell) -> Cell:
    """Image of a cell under an integer linear map, via variable elimination.

    Works for maps that drop dimension on the cell; the injective case in
    the push-forward has a cheaper dedicated path.
    """
    m = len(matrix)
    n = cell.ambient_dim
    # Lift to {(y, x) : x in cell, y = M x} and eliminate the x block.
    ineqs = [((0,) * m + tuple(f.linear), f.constant) for f in cell.ineqs]
    eqs = [((0,) * m + tuple(f.linear), f.constant) for f in cell.eqs]
    for i in range(m):
        row = [0] * m
        row[i] = 1
        eqs.append((tuple(row) + tuple(-x for x in matrix[i]), QQ(0)))
    ineqs, eqs = _eliminate_last(m + n, n, ineqs, eqs)
    return Cell.from_constraints(
        m,
        [form_from_rational(lin, c) for lin, c in ineqs],
        [form_from_rational(lin, c) for lin, c in eqs])


def _eliminate_last(nvars, count, ineqs, eqs):
    """Fourier-Motzkin elimination of the trailing `count` variables."""
    for j in range(nvars - 1, nvars - count - 1, -1):
        pivot = next((e for e in eqs if e[0][j] != 0), None)
        if pivot is not None:
            eqs = [_subst(e, pivot, j) for e in eqs if e is not pivot]
            ineqs = [_subst(f, pivot, j) for f in ineqs]
        else:
            pos = [f for f in ineqs if f[0][j] > 0]
            neg = [f for f in ineqs if f[0][j] < 0]
            zero = [f for f in ineqs if f[0][j] == 0]
            combos = []
            for fp in pos:
                for fn in neg:
                    lin = tuple(QQ(a) * -fn[0][j] + QQ(b) * fp[0][j]
                                for a, b in zip(fp[0], fn[0]))
                    combos.append((lin, QQ(fp[1]) * -fn[0][j] + QQ(fn[1]) * fp[0][j]))
            ineqs = zero + combos
        seen = {}
        for lin, c in ineqs:
            key = (tuple(lin), rat_parts(c))
            seen.setdefault(key, (lin, c))
        ineqs = list(seen.values())
    trim = nvars - count
    return ([(lin[:trim], c) for lin, c in ineqs],
            [(lin[:trim], c) for lin, c in eqs])


def _subst(constraint, pivot, j):
    """Eliminate variable j from a constraint using an equality pivot."""
    lin, c = constraint
    plin, pc = pivot
    if lin[j] == 0:
        return (tuple(QQ(a) for a in lin), QQ(c))
    factor = QQ(lin[j]) / QQ(plin[j])
    return (tuple(QQ(a) - factor * QQ(b) for a, b in zip(lin, plin)),
            QQ(c) - factor * QQ(pc))


# -- generator-style constructors ------------------------------------------


def cone_from_rays(rays, ambient_dim) -> Cell:
    """Simplicial cone spanned by linearly independent integer rays.

    The H-representation pairs each ray with a dual form positive on it and
    vanishing on the others; equalities cut out the linear span.
    """
    from .kernel import solve_rational, subspace_lattice

    rays = tuple(tuple(int(x) for x in r) for r in rays)
    if not rays:
        return point_cell((0,) * ambient_dim)
    lattice = subspace_lattice(rays, ambient_dim)
    if lattice.rank != len(rays):
        raise ValueError("rays are linearly dependent")
    eqs = tuple(AffineForm(a, 0) for a in kernel_lattice(rays, ambient_dim))
    ineqs = []
    for i in range(len(rays)):
        rhs = tuple(1 if j == i else 0 for j in range(len(rays)))
        a = solve_rational(list(rays), rhs)
        ineqs.append(form_from_rational(a, 0))
    apex = tuple(sum(QQ(r[i]) for r in rays) for i in range(ambient_dim))
    return Cell(ambient_dim, tuple(ineqs), eqs, len(rays), apex, lattice)


def point_cell(p) -> Cell:
    from .kernel import LatticeBasis as LB

    p = tuple(QQ(x) for x in p)
    n = len(p)
    eqs = tuple(AffineForm(tuple(1 if j == i else 0 for j in range(n)), -p[i])
                for i in range(n))
    return Cell(n, (), eqs, 0, p, LB(n, ()))


def ray_cell(base, direction) -> Cell:
    """Halfline base + R_{>=0} . direction."""
    from .kernel import subspace_lattice

    base = tuple(QQ(x) for x in base)
    d = tuple(int(x) for x in direction)
    n = len(base)
    eqs = tuple(AffineForm(a, -dot(a, base)) for a in kernel_lattice([d], n))
    ineq = AffineForm(d, -dot(d, base))
    interior = tuple(b + QQ(x) for b, x in zip(base, d))
    return Cell(n, (ineq,), eqs, 1, interior, subspace_lattice([d], n))


def segment_cell(p, q) -> Cell:
    from .kernel import clear_denominators, subspace_lattice

    p = tuple(QQ(x) for x in p)
    q = tuple(QQ(x) for x in q)
    if p == q:
        raise ValueError("degenerate segment")
    n = len(p)
    d = clear_denominators(tuple(b - a for a, b in zip(p, q)))
    eqs = tuple(AffineForm(a, -dot(a, p)) for a in kernel_lattice([d], n))
    ineqs = (AffineForm(d, -dot(d, p)),
             AffineForm(tuple(-x for x in d), dot(d, q)))
    mid = tuple((a + b) / 2 for a, b in zip(p, q))
    return Cell(n, ineqs, eqs, 1, mid, subspace_lattice([d], n))


# -- canonical reduction helpers -------------------------------------------


def _rref_affine(rows, n):
    """Reduced row echelon form of affine equality rows (a, c) ~ a.x + c = 0.

    Unique for the affine subspace they cut out; rows are returned with
    rational entries, pivots first.
    """
    work = [[QQ(x) for x in lin] + [QQ(c)] for lin, c in rows]
    rank = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [a / pv for a in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
    return [(tuple(row[:n]), row[n]) for row in work[:rank]]


def _reduce_mod_rows(form: AffineForm, eq_rows) -> AffineForm:
    """Canonical coset representative of a form modulo the equality rows."""
    lin = [QQ(a) for a in form.linear]
    c = QQ(form.constant)
    for rlin, rc in eq_rows:
        piv = next((i for i, a in enumerate(rlin) if a != 0), None)
        if piv is None or lin[piv] == 0:
            continue
        f = lin[piv] / QQ(rlin[piv])
        lin = [a - f * QQ(b) for a, b in zip(lin, rlin)]
        c = c - f * rc
    return form_from_rational(lin, c).scaled_primitive()
