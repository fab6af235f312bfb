"""Integer linear maps as morphisms of cycles: push-forward and pull-back.

The push-forward of a weighted complex collects the images of the maximal
cells on which the map is injective, refines them into a common complex,
and weights every image facet by

    sum over source facets mapping onto it of
        source weight * [target cell lattice : image of source cell lattice].

Cells on which the map drops dimension contribute nothing.  Pull-back of a
function is composition with the map; together they satisfy the projection
formula, which is exposed as a first-class check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import Cycle, WeightedComplex, cycles_equal
from .divisors import (
    CartierDivisor,
    PiecewisePL,
    TropicalPolynomial,
    pl_rep,
    weil_divisor,
)
from .kernel import (
    QQ,
    dot,
    kernel_lattice,
    lattice_index,
    mat_rank,
    mat_vec,
    solve_rational,
    subspace_lattice,
)
from .polyhedra import (
    AffineForm,
    Cell,
    cell_contains_cell,
    collect_hyperplanes,
    form_from_rational,
    linear_image_cell,
    refine_cell,
    sign_vector,
)


@dataclass(frozen=True)
class IntegerLinearMap:
    """Z-linear map given by an integer matrix (target_dim x source_dim)."""

    matrix: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))

    @property
    def target_dim(self):
        return len(self.matrix)

    @property
    def source_dim(self):
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, v):
        return mat_vec(self.matrix, v)

    def compose(self, other: "IntegerLinearMap") -> "IntegerLinearMap":
        """self after other."""
        rows = tuple(tuple(dot(r, col) for col in zip(*other.matrix))
                     for r in self.matrix)
        return IntegerLinearMap(rows)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


class Morphism:
    """An integer linear map between the supports of two cycles.

    Construction verifies that the image of the source support lies inside
    the target support; for a complete target (all of R^m) the check is
    immediate.
    """

    __slots__ = ("map", "source", "target")

    def __init__(self, map: IntegerLinearMap, source: Cycle, target: Cycle):
        if map.source_dim != source.ambient_dim:
            raise ValueError("matrix width does not match the source ambient space")
        if map.target_dim != target.ambient_dim:
            raise ValueError("matrix height does not match the target ambient space")
        self.map = map
        self.source = source
        self.target = target
        if not _support_is_complete(target):
            images = [linear_image_cell(map.matrix, cell)
                      for cell in source.reduce().complex.cells]
            if not _cells_inside_support(images, target.complex):
                raise ValueError("image of the source support leaves the target support")


def _support_is_complete(cycle: Cycle) -> bool:
    return any(not cell.ineqs and not cell.eqs for cell in cycle.complex.cells)


def _cells_inside_support(cells, complex: WeightedComplex) -> bool:
    """Whether each given cell lies inside the union of the complex cells."""
    targets = complex.cells
    forms = collect_hyperplanes(targets)
    for cell in cells:
        for piece in refine_cell(cell, forms):
            if not any(cell_contains_cell(t, piece) for t in targets):
                return False
    return True


def image_cell(matrix, cell: Cell) -> Cell | None:
    """Image of a cell under a map injective on it, or None on rank drop.

    On the affine hull the map is an affine bijection onto the image hull,
    so every inequality transports to the image by solving for a covector
    with the same pairings against the image directions.
    """
    basis = cell.direction_lattice.vectors
    imgs = [mat_vec(matrix, b) for b in basis]
    if mat_rank(imgs) < len(basis):
        return None
    m = len(matrix)
    p = cell.interior_point
    q = mat_vec(matrix, p)
    eqs = tuple(AffineForm(a, -dot(a, q)) for a in kernel_lattice(imgs, m))
    ineqs = []
    for f in cell.ineqs:
        if basis:
            # imgs has full row rank, so the transport system always solves.
            a = solve_rational(list(imgs), tuple(f.eval_direction(b) for b in basis))
        else:
            a = (QQ(0),) * m
        ineqs.append(form_from_rational(a, f.value_at(p) - dot(a, q)))
    lattice = subspace_lattice(imgs, m)
    return Cell(m, tuple(ineqs), eqs, len(basis), tuple(QQ(x) for x in q), lattice)


def push_forward(f: Morphism, cycle: Cycle | None = None, validate: bool = True) -> Cycle:
    """Push a subcycle of the source along the morphism.

    Refines the collected image cells into a complex and applies the
    lattice-index weight formula; the result is balanced whenever the input
    is.
    """
    src = f.source if cycle is None else cycle
    if cycle is not None and cycle is not f.source and validate:
        if src.ambient_dim != f.source.ambient_dim:
            raise ValueError("subcycle lives in the wrong ambient space")
        if not _cells_inside_support(src.reduce().complex.cells, f.source.complex):
            raise ValueError("cycle is not supported inside the morphism source")
    red = src.reduce()
    m = f.map.target_dim
    if red.is_empty:
        return Cycle.empty(m, red.dim)
    entries = []
    for i, cell in enumerate(red.complex.cells):
        img = image_cell(f.map.matrix, cell)
        if img is not None:
            entries.append((i, img))
    if not entries:
        return Cycle.empty(m, red.dim)
    forms = collect_hyperplanes([img for _, img in entries])
    table = {}
    for i, img in entries:
        w = red.complex.weights[i]
        src_lattice = red.complex.cells[i].direction_lattice
        for piece in refine_cell(img, forms):
            key = sign_vector(piece, forms)
            entry = table.setdefault(key, [piece, 0])
            entry[1] += w * lattice_index(f.map.matrix, src_lattice,
                                          piece.direction_lattice)
    cells, weights = [], []
    for key in sorted(table):
        piece, w = table[key]
        if w != 0:
            cells.append(piece)
            weights.append(w)
    out = WeightedComplex(m, red.dim, cells, weights)
    return Cycle(out, check=False)


def pull_back(f, phi) -> CartierDivisor:
    """Compose a function on the target with the map: the pull-back divisor.

    Polynomial representatives compose term by term; piecewise ones pull
    their domain cells back through the map.  Affine functions pull back to
    affine functions, so this descends to Cartier divisors.
    """
    matrix = f.map.matrix if isinstance(f, Morphism) else f.matrix
    rep = pl_rep(phi)
    cols = tuple(zip(*matrix))

    def compose_form(form):
        return AffineForm(tuple(dot(form.linear, col) for col in cols), form.constant)

    if isinstance(rep, TropicalPolynomial):
        return CartierDivisor(TropicalPolynomial(tuple(compose_form(t) for t in rep.terms)))
    n = len(cols)
    pieces = []
    for dom, form in rep.pieces:
        pre = Cell.try_from_constraints(
            n,
            [compose_form(g) for g in dom.ineqs],
            [compose_form(g) for g in dom.eqs])
        if pre is not None:
            pieces.append((pre, compose_form(form)))
    if not pieces:
        raise ValueError("pull-back has empty domain")
    return CartierDivisor(PiecewisePL(tuple(pieces)))


def check_projection_formula(f: Morphism, cycle: Cycle, phi) -> bool:
    """Exact comparison of divisor-then-push against pull-then-divisor."""
    lhs = weil_divisor(phi, push_forward(f, cycle))
    rhs = push_forward(f, weil_divisor(pull_back(f, phi), cycle), validate=False)
    return cycles_equal(lhs, rhs)
