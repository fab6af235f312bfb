"""Weighted polyhedral complexes and balanced cycles embedded in R^n.

A :class:`WeightedComplex` stores only its maximal cells together with
integer weights; ridges and deeper faces are derived on demand.  A
:class:`Cycle` is a complex satisfying the balancing condition, considered
up to refinement: two cycles are equal when a common refinement carries
identical weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .kernel import QQ, vec_add, vec_scale
from .polyhedra import (
    Cell,
    cell_contains_cell,
    collect_hyperplanes,
    cone_from_rays,
    intersect,
    product_cell,
    refine_cell,
    sign_vector,
)


class WeightedComplex:
    """Pure-dimensional collection of maximal cells with integer weights.

    The empty complex is allowed in every dimension.  Instances are
    immutable; derived data (ridge lists) is cached.
    """

    __slots__ = ("ambient_dim", "dim", "cells", "weights", "_ridges")

    def __init__(self, ambient_dim, dim, cells=(), weights=()):
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.cells = tuple(cells)
        self.weights = tuple(int(w) for w in weights)
        if len(self.cells) != len(self.weights):
            raise ValueError("one weight per maximal cell required")
        self._ridges = None

    @classmethod
    def empty(cls, ambient_dim, dim) -> "WeightedComplex":
        return cls(ambient_dim, dim)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    def weight_of(self, cell: Cell) -> int:
        """Weight of the maximal cell equal (as a set) to the given one."""
        key = cell.canonical_key
        for c, w in zip(self.cells, self.weights):
            if c.canonical_key == key:
                return w
        raise KeyError("cell is not a maximal cell of this complex")

    def nonzero_part(self) -> "WeightedComplex":
        kept = [(c, w) for c, w in zip(self.cells, self.weights) if w != 0]
        return WeightedComplex(self.ambient_dim, self.dim,
                               [c for c, _ in kept], [w for _, w in kept])

    def ridges(self):
        """Codimension-one cells with the indices of their adjacent facets."""
        if self._ridges is None:
            table = {}
            for idx, cell in enumerate(self.cells):
                for face in cell.faces_of_codim_one():
                    entry = table.get(face.canonical_key)
                    if entry is None:
                        table[face.canonical_key] = (face, [idx])
                    else:
                        entry[1].append(idx)
            self._ridges = tuple((face, tuple(idxs))
                                 for _, (face, idxs) in sorted(table.items()))
        return self._ridges

    def __repr__(self):
        return (f"WeightedComplex(n={self.ambient_dim}, dim={self.dim}, "
                f"{len(self.cells)} maximal cells)")


@dataclass(frozen=True)
class NormalVector:
    """Primitive normal representative of a facet relative to a ridge."""

    facet: Cell
    ridge: Cell
    representative: tuple


@dataclass
class BalanceReport:
    balanced: bool
    witness: Cell | None = None
    defect: tuple | None = None

    def __bool__(self):
        return self.balanced


@dataclass
class Diagnostics:
    valid: bool
    problems: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


class Cycle:
    """An equivalence class of balanced complexes, held by a representative.

    Arithmetic returns reduced representatives (no zero weights).  Pass
    ``check=False`` to skip the balancing verification when the input is
    balanced by construction.
    """

    __slots__ = ("complex",)

    def __init__(self, complex: WeightedComplex, check: bool = True):
        if check:
            report = is_balanced(complex)
            if not report:
                raise ValueError(f"complex is not balanced at ridge {report.witness!r}")
        self.complex = complex

    @classmethod
    def empty(cls, ambient_dim, dim) -> "Cycle":
        return cls(WeightedComplex.empty(ambient_dim, dim), check=False)

    @property
    def ambient_dim(self):
        return self.complex.ambient_dim

    @property
    def dim(self):
        return self.complex.dim

    @property
    def is_empty(self):
        return self.complex.is_empty

    @property
    def reduced(self) -> bool:
        return all(w != 0 for w in self.complex.weights)

    def reduce(self) -> "Cycle":
        return self if self.reduced else Cycle(self.complex.nonzero_part(), check=False)

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __rmul__(self, m):
        if isinstance(m, int):
            return scale(self, m)
        return NotImplemented

    def __repr__(self):
        return f"Cycle({self.complex!r})"


# -- validation and balancing ----------------------------------------------


def validate_complex(c: WeightedComplex) -> Diagnostics:
    """Check pure dimension and that cells meet along common faces.

    Maximal cells must pairwise intersect in a face of each; this is what
    makes relative interiors of derived faces partition the support.
    """
    problems = []
    for cell in c.cells:
        if cell.ambient_dim != c.ambient_dim:
            problems.append(f"cell {cell!r} has wrong ambient dimension")
        if cell.dim != c.dim:
            problems.append(f"cell {cell!r} breaks pure dimension {c.dim}")
    cells = c.cells
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            common = intersect(cells[i], cells[j])
            if common is None:
                continue
            if common.dim == c.dim:
                problems.append(f"maximal cells {i} and {j} overlap in dimension {c.dim}")
                continue
            for label, cell in ((i, cells[i]), (j, cells[j])):
                face = _minimal_face_through(cell, common.interior_point)
                if not face.same_set(common):
                    problems.append(
                        f"intersection of maximal cells {i} and {j} "
                        f"is not a face of cell {label}")
    return Diagnostics(not problems, problems)


def _minimal_face_through(cell: Cell, p) -> Cell:
    """Smallest face of the cell containing a point of it."""
    tight = tuple(f for f in cell.ineqs if f.value_at(p) == 0)
    return Cell.from_constraints(cell.ambient_dim, cell.ineqs, cell.eqs + tight)


def normal_vector(facet: Cell, ridge: Cell) -> NormalVector:
    """Lattice normal of a facet relative to a codimension-one face.

    The representative generates the facet lattice modulo the ridge lattice
    and points from the ridge into the facet: a form vanishing on the ridge
    and nonnegative on the facet is positive on it.
    """
    from .kernel import quotient_generator

    if ridge.dim != facet.dim - 1 or not facet.contains_point(ridge.interior_point):
        raise ValueError("ridge is not a codimension-one face of the facet")
    u = quotient_generator(ridge.direction_lattice, facet.direction_lattice)
    p = ridge.interior_point
    for f in facet.ineqs:
        if f.value_at(p) == 0:
            pairing = f.eval_direction(u)
            if pairing == 0:
                continue
            if pairing < 0:
                u = tuple(-x for x in u)
            return NormalVector(facet, ridge, u)
    raise ValueError("no facet inequality is tight on the ridge")


def is_balanced(c: WeightedComplex) -> BalanceReport:
    """Check the balancing condition at every ridge of the nonzero part.

    The weighted sum of normal representatives must lie in the linear span
    of the ridge; membership is an exact rank comparison, so no choice of
    representatives matters.
    """
    reduced = c.nonzero_part()
    n = c.ambient_dim
    for ridge, idxs in reduced.ridges():
        s = (0,) * n
        for i in idxs:
            v = normal_vector(reduced.cells[i], ridge).representative
            s = vec_add(s, vec_scale(reduced.weights[i], v))
        if not ridge.direction_lattice.spans_vector(s):
            return BalanceReport(False, ridge, s)
    return BalanceReport(True)


# -- refinement, sums, equality ---------------------------------------------


def refine_complex(c: WeightedComplex, forms) -> WeightedComplex:
    """Refine every maximal cell along a hyperplane arrangement.

    The arrangement is extended by all defining forms of the complex, which
    keeps the output a complex and makes sign vectors over it identify
    pieces; weights are inherited from the original cells.
    """
    extended = {h.sort_key(): h for h in collect_hyperplanes(c.cells)}
    for h in forms:
        extended.setdefault(h.sort_key(), h)
    arrangement = tuple(extended[k] for k in sorted(extended))
    out = {}
    for cell, w in zip(c.cells, c.weights):
        for piece in refine_cell(cell, arrangement):
            key = sign_vector(piece, arrangement)
            if key in out:
                raise ValueError("refinement produced a duplicate piece; "
                                 "input cells overlap in full dimension")
            out[key] = (piece, w)
    items = sorted(out.items())
    return WeightedComplex(c.ambient_dim, c.dim,
                           [p for _, (p, _) in items], [w for _, (_, w) in items])


def common_refinement(a: WeightedComplex, b: WeightedComplex):
    """Refine both complexes along the union of their defining forms.

    Cells of the results coincide over the common support, which reduces
    sums and equality tests to weight comparisons piece by piece.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    forms = collect_hyperplanes(a.cells + b.cells)
    return refine_complex(a, forms), refine_complex(b, forms)


def _merged_weights(a: WeightedComplex, b: WeightedComplex):
    """Common-refinement pieces with the weight each side assigns to them."""
    forms = collect_hyperplanes(a.cells + b.cells)
    table = {}
    for source, slot in ((a, 0), (b, 1)):
        for cell, w in zip(source.cells, source.weights):
            for piece in refine_cell(cell, forms):
                key = sign_vector(piece, forms)
                entry = table.setdefault(key, [piece, 0, 0])
                entry[slot + 1] += w
    return [tuple(v) for _, v in sorted(table.items())]


def add(a: Cycle, b: Cycle) -> Cycle:
    """Sum of cycles: refine to a common complex and add weights."""
    if a.is_empty:
        return b.reduce()
    if b.is_empty:
        return a.reduce()
    if a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        raise ValueError("cannot add cycles of different dimension")
    merged = _merged_weights(a.complex, b.complex)
    cells, weights = [], []
    for piece, wa, wb in merged:
        if wa + wb != 0:
            cells.append(piece)
            weights.append(wa + wb)
    return Cycle(WeightedComplex(a.ambient_dim, a.dim, cells, weights), check=False)


def negate(a: Cycle) -> Cycle:
    return scale(a, -1)


def scale(a: Cycle, m: int) -> Cycle:
    if m == 0:
        return Cycle.empty(a.ambient_dim, a.dim)
    c = a.complex
    scaled = WeightedComplex(c.ambient_dim, c.dim, c.cells,
                             [m * w for w in c.weights])
    return Cycle(scaled, check=False).reduce()


def cycles_equal(a: Cycle, b: Cycle) -> bool:
    """Equality up to refinement: the difference has empty nonzero part."""
    ra, rb = a.reduce(), b.reduce()
    if ra.is_empty or rb.is_empty:
        return ra.is_empty and rb.is_empty
    if ra.ambient_dim != rb.ambient_dim or ra.dim != rb.dim:
        return False
    return all(wa == wb for _, wa, wb in _merged_weights(ra.complex, rb.complex))


# -- products, translations, standard cycles --------------------------------


def cartesian_product(a: Cycle, b: Cycle) -> Cycle:
    """Product cycle in R^{n+m}; weights multiply cell by cell."""
    if a.is_empty or b.is_empty:
        return Cycle.empty(a.ambient_dim + b.ambient_dim, a.dim + b.dim)
    ca, cb = a.complex, b.complex
    cells, weights = [], []
    for c1, w1 in zip(ca.cells, ca.weights):
        for c2, w2 in zip(cb.cells, cb.weights):
            cells.append(product_cell(c1, c2))
            weights.append(w1 * w2)
    out = WeightedComplex(ca.ambient_dim + cb.ambient_dim, ca.dim + cb.dim,
                          cells, weights)
    return Cycle(out, check=False).reduce()


def translate(a: Cycle, v) -> Cycle:
    v = tuple(QQ(x) for x in v)
    c = a.complex
    moved = WeightedComplex(c.ambient_dim, c.dim,
                            [cell.translate(v) for cell in c.cells], c.weights)
    return Cycle(moved, check=False)


def minus_e(i: int, n: int) -> tuple:
    """Generator -e_i of the standard directions, with e_0 = -e_1-...-e_n."""
    if i == 0:
        return (1,) * n
    return tuple(-1 if j == i - 1 else 0 for j in range(n))


@lru_cache(maxsize=None)
def standard_skeleton(n: int, k: int) -> Cycle:
    """k-skeleton of the fan of the tropical hyperplane in R^n, weights 1.

    Maximal cones are spanned by k of the n+1 directions -e_0, ..., -e_n;
    these are the balanced skeleta that the degree and genericity tests are
    measured against.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    cells = [cone_from_rays([minus_e(i, n) for i in subset], n)
             for subset in combinations(range(n + 1), k)]
    cx = WeightedComplex(n, k, cells, [1] * len(cells))
    return Cycle(cx, check=False)


def rn_cycle(n: int) -> Cycle:
    """The ambient space R^n as a cycle with weight one."""
    return Cycle(WeightedComplex(n, n, [Cell.full_space(n)], [1]), check=False)


def star_fan(c: WeightedComplex, tau: Cell) -> WeightedComplex:
    """Fan of tangent cones at a cell, recentered at its interior point.

    Collects the maximal cells containing the cell and replaces each by the
    cone of directions entering it; weights are inherited.
    """
    p = tau.interior_point
    cones, weights = [], []
    for cell, w in zip(c.cells, c.weights):
        if cell.contains_point(p) and cell_contains_cell(cell, tau):
            cones.append(cell.tangent_cone(p))
            weights.append(w)
    if not cones:
        raise ValueError("cell does not belong to the complex")
    return WeightedComplex(c.ambient_dim, c.dim, cones, weights)
