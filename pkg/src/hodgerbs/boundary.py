"""Boundary data of a nilpotent degeneration.

The weight filtration of a rational nilpotent N splits the underlying
space into graded quotients.  On the level c+l quotient the polarization
and N^l induce a bilinear form; its kernel bookkeeping produces the
primitive subspaces, a limit filtration induces Hodge-type dimension
tables on those, and each table cuts out a smaller classifying space.
The full report assembles the per-level tables with the fibration
dimensions of the matching boundary component: the anisotropic Levi
factor of the canonical parabolic, the centralizer of N inside it, and
the symmetry algebras of the induced forms.

Quotient spaces are represented concretely: each level carries a tuple
of lift vectors extending a basis of the level below, and "graded
coordinates" always means coordinates over those lifts.
"""

from dataclasses import dataclass
from typing import Optional

from .domain import Filtration, HodgeFrame, domain_dimensions
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    extend_basis,
    flatten,
    form_value,
    hermitian_positive,
    kernel_basis,
    kernel_subspace,
    nilpotent_exp,
    solve_vector,
    symmetric_signature,
    vec_add,
    vec_conj,
)
from .nilpotents import (
    CanonicalParabolic,
    WeightFiltration,
    _ad_matrix,
    canonical_parabolic,
    jm_triple,
    weight_filtration,
    weight_filtration_by_powers,
)
from .roots import RestrictedRoots, restrict_roots
from .scalars import I, ONE, ZERO, Scalar

_I_POWERS = (ONE, I, -ONE, -I)


def _i_power(k: int) -> Scalar:
    return _I_POWERS[k % 4]


# -- graded quotients ----------------------------------------------------------


@dataclass(frozen=True)
class GradedPieces:
    """Quotients of a weight filtration with chosen lift bases, plus the
    maps the nilpotent induces between them (level j to level j-2),
    written in lift coordinates."""

    filtration: WeightFiltration
    nilpotent: Matrix
    lifts: dict[int, tuple[Vector, ...]]

    def dim(self, j: int) -> int:
        return len(self.lifts.get(j, ()))

    def levels(self) -> list[int]:
        return [j for j in sorted(self.lifts) if self.lifts[j]]

    def project(self, j: int, v: Vector) -> Vector:
        """Graded coordinates of a vector of W_j on the level-j quotient."""
        w = self.filtration
        columns = list(self.lifts.get(j, ())) + list(w.piece(j - 1).basis)
        if not columns:
            if any(not x.is_zero() for x in v):
                raise ValueError("vector does not lie in the filtration level")
            return ()
        sol = solve_vector(Matrix.from_cols(columns), v)
        if sol is None:
            raise ValueError("vector does not lie in the filtration level")
        return tuple(sol[: self.dim(j)])

    def induced_map(self, j: int, power: int = 1) -> Optional[Matrix]:
        """Matrix of the induced nilpotent power, level j to j - 2*power,
        or None when either end is the zero space (the map is zero)."""
        source = self.lifts.get(j, ())
        if not source or self.dim(j - 2 * power) == 0:
            return None
        op = self.nilpotent ** power
        cols = [self.project(j - 2 * power, op.apply(v)) for v in source]
        return Matrix.from_cols(cols)

    def conjugation_matrix(self, j: int) -> Matrix:
        """Matrix of complex conjugation on the level-j quotient (the
        identity whenever the lifts are real vectors)."""
        lifts = self.lifts[j]
        return Matrix.from_cols([self.project(j, vec_conj(v)) for v in lifts])

    def conjugate_on_level(self, j: int, space: Subspace) -> Subspace:
        """Conjugate of a subspace given in level-j graded coordinates."""
        conj = self.conjugation_matrix(j)
        return Subspace(
            [conj.apply(vec_conj(b)) for b in space.basis], self.dim(j)
        )


def graded_pieces(w: WeightFiltration, n: Matrix) -> GradedPieces:
    """Fix lift bases for every quotient of the weight filtration of n by
    echelon extension, lowest level first."""
    if n.ncols != w.ambient:
        raise ValueError("nilpotent and filtration live in different spaces")
    if weight_filtration_by_powers(n, w.center) != w:
        raise ValueError("filtration is not the weight filtration of the nilpotent")
    lifts: dict[int, tuple[Vector, ...]] = {}
    for j in range(w.lowest, w.highest + 1):
        lifts[j] = tuple(extend_basis(w.piece(j - 1), w.piece(j)))
    pieces = GradedPieces(filtration=w, nilpotent=n, lifts=lifts)
    c = w.center
    for j in pieces.levels():
        if pieces.dim(j) != pieces.dim(2 * c - j):
            raise AssertionError("graded dimensions are not symmetric about the center")
        for v in lifts[j]:
            pieces.project(j - 2, n.apply(v))  # raises unless n lowers levels by two
    return pieces


# -- induced forms -------------------------------------------------------------


@dataclass(frozen=True)
class InducedForm:
    """The pairing S_l(v~, w~) = S(v, N^l w) on the level c+l quotient,
    as a Gram matrix over the lift basis (None when the quotient is
    zero).

    sign records the certified (-1)^(c+l) symmetry.  Nondegeneracy on the
    full quotient is reported, not enforced; the positivity statements
    all live on the primitive part."""

    level: int
    weight: int
    sign: int
    gram: Optional[Matrix]
    nondegenerate_on_graded: bool
    signature: Optional[tuple[int, int, int]]


def induced_form(
    s: Matrix,
    n: Matrix,
    w: WeightFiltration,
    l: int,
    pieces: Optional[GradedPieces] = None,
) -> InducedForm:
    """Push the polarization through the l-th power of the nilpotent onto
    the level c+l quotient and certify the result.

    Well-definedness is probed directly: perturbing every lift by each
    basis vector of the level below must reproduce the Gram matrix.  A
    signature is computed when the form is symmetric with real entries.
    """
    if l < 0:
        raise ValueError("induced forms exist for nonnegative levels only")
    if pieces is None:
        pieces = graded_pieces(w, n)
    j = w.center + l
    lifts = pieces.lifts.get(j, ())
    sign = 1 if j % 2 == 0 else -1
    if not lifts:
        return InducedForm(l, j, sign, None, True, (0, 0, 0) if sign == 1 else None)
    op = n ** l

    def gram_over(vectors):
        return Matrix(
            [[form_value(s, u, op.apply(v)) for v in vectors] for u in vectors]
        )

    gram = gram_over(lifts)
    k = len(lifts)
    for a in range(k):
        for b in range(k):
            if gram[a, b] != gram[b, a] * sign:
                raise AssertionError("induced form lost its parity symmetry")
    for extra in w.piece(j - 1).basis:
        if gram_over([vec_add(u, extra) for u in lifts]) != gram:
            raise AssertionError("induced form depends on the lift choice")
    nondegenerate = not kernel_basis(gram)
    signature = None
    if sign == 1 and all(x.is_real() for row in gram.rows for x in row):
        signature = symmetric_signature(gram)
    return InducedForm(l, j, sign, gram, nondegenerate, signature)


# -- primitive parts -----------------------------------------------------------


@dataclass(frozen=True)
class PrimitivePart:
    """Kernel of the (l+1)-st induced nilpotent power at level c+l, in
    graded coordinates over the quotients it was computed in."""

    level: int
    weight: int
    space: Subspace
    graded: GradedPieces

    @property
    def dim(self) -> int:
        return self.space.dim


def primitive_parts(
    n: Matrix,
    w: WeightFiltration,
    pieces: Optional[GradedPieces] = None,
) -> list[PrimitivePart]:
    """Primitive subspaces of the nonnegative levels, with the hard
    Lefschetz dimension bookkeeping asserted."""
    if pieces is None:
        pieces = graded_pieces(w, n)
    c = w.center
    by_weight: dict[int, PrimitivePart] = {}
    for j in range(c, w.highest + 1):
        k = pieces.dim(j)
        if k == 0:
            continue
        cut = pieces.induced_map(j, power=j - c + 1)
        space = Subspace.full(k) if cut is None else kernel_subspace(cut)
        by_weight[j] = PrimitivePart(level=j - c, weight=j, space=space, graded=pieces)
    for j, part in by_weight.items():
        k = pieces.dim(j)
        step = pieces.induced_map(j + 2)
        image = Subspace.zero(k) if step is None else Subspace(step.cols(), k)
        if part.space.intersect(image).dim != 0:
            raise AssertionError("primitive part meets the image of the level above")
        if part.space.sum_with(image).dim != k:
            raise AssertionError("primitive parts and images do not fill the quotient")
        higher = sum(
            p.dim for jj, p in by_weight.items() if jj > j and (jj - j) % 2 == 0
        )
        if part.dim + higher != k:
            raise AssertionError("Lefschetz dimension bookkeeping failed")
    return [by_weight[j] for j in sorted(by_weight)]


# -- limit Hodge numbers ---------------------------------------------------------


@dataclass(frozen=True)
class LevelHodgeTable:
    """Induced filtration of one primitive part with its dimension table
    f^p = dim F^p P, p running over 0..weight+1."""

    level: int
    weight: int
    f_table: dict[int, int]
    filtration: dict[int, Subspace]

    def hodge_numbers(self) -> tuple[int, ...]:
        """Dimension differences f^p - f^(p+1), indexed by p ascending:
        the candidate Hodge numbers of the level."""
        f = self.f_table
        return tuple(
            f.get(p, 0) - f.get(p + 1, 0) for p in range(0, self.weight + 1)
        )


@dataclass(frozen=True)
class LimitHodgeData:
    """Limit filtration data: the induced filtrations on every graded
    quotient, dimension-checked across the nilpotent's power shifts, and
    the per-primitive-part tables."""

    filtration: Filtration
    pieces: GradedPieces
    graded: dict[int, dict[int, Subspace]]
    tables: tuple[LevelHodgeTable, ...]


def _induced_on_level(
    f_inf: Filtration, pieces: GradedPieces, j: int, p: int
) -> Subspace:
    space = f_inf.piece(p).intersect(pieces.filtration.piece(j))
    vectors = [pieces.project(j, v) for v in space.basis]
    return Subspace(vectors, pieces.dim(j))


def limit_hodge_numbers(
    f_inf: Filtration,
    primitives: list[PrimitivePart],
) -> LimitHodgeData:
    """Induce the limit filtration on every graded quotient and tabulate
    its dimensions on the primitive parts.

    Compatibility check: the l-th power of the nilpotent identifies the
    level c+l and c-l quotients, shifting filtration degree by l; the
    induced dimension tables at the two ends must agree under that
    shift, otherwise no constant-dimension induced filtration exists.
    """
    if not primitives:
        raise ValueError("no primitive parts supplied")
    pieces = primitives[0].graded
    w = pieces.filtration
    if f_inf.ambient != w.ambient:
        raise ValueError("filtration and weight filtration live in different spaces")
    c = w.center
    p_top = max(f_inf.weight, w.highest) + 1
    graded: dict[int, dict[int, Subspace]] = {}
    for j in pieces.levels():
        graded[j] = {
            p: _induced_on_level(f_inf, pieces, j, p) for p in range(0, p_top + 1)
        }
    for j in pieces.levels():
        l = j - c
        if l <= 0:
            continue
        upper = graded[j]
        lower = graded[2 * c - j]
        for p in range(0, p_top + 1):
            if upper[p].dim != lower[max(p - l, 0)].dim:
                raise ValueError(
                    "filtration does not induce constant-dimension filtrations on Gr"
                )
    tables = []
    for part in primitives:
        j = part.weight
        filtration = {p: graded[j][p].intersect(part.space) for p in range(0, j + 2)}
        f_table = {p: filtration[p].dim for p in range(0, j + 2)}
        if any(f_table[p] < f_table[p + 1] for p in range(0, j + 1)):
            raise AssertionError("induced dimension table is not decreasing")
        tables.append(
            LevelHodgeTable(
                level=part.level, weight=j, f_table=f_table, filtration=filtration
            )
        )
    return LimitHodgeData(
        filtration=f_inf, pieces=pieces, graded=graded, tables=tuple(tables)
    )


# -- polarization of the limit structures ------------------------------------------


def polarization_check(
    limit: LimitHodgeData,
    forms: dict[int, InducedForm],
) -> dict[int, bool]:
    """Per level: does the induced filtration put a Hodge structure on
    the primitive part that the induced form polarizes?

    The candidate (p, q) pieces are F^p meeting the conjugate of F^q; if
    they fail to span the primitive part, the limit filtration is not a
    Hodge filtration there and the check errors out.  Otherwise each
    piece must be positive definite for i^(p-q) S_l(v, conjugate w).
    """
    verdicts: dict[int, bool] = {}
    for table in limit.tables:
        form = forms[table.level]
        if form.gram is None:
            verdicts[table.level] = True
            continue
        j = table.weight
        total = Subspace.zero(form.gram.ncols)
        count = 0
        components = []
        for p in range(0, j + 1):
            q = j - p
            piece = table.filtration[p].intersect(
                limit.pieces.conjugate_on_level(j, table.filtration[q])
            )
            components.append((p, q, piece))
            total = total.sum_with(piece)
            count += piece.dim
        prim_dim = table.f_table[0]
        if count != prim_dim or total.dim != prim_dim:
            raise ValueError(
                "limit filtration not a Hodge filtration on the primitive part"
            )
        good = True
        for p, q, piece in components:
            if piece.dim == 0:
                continue
            basis = list(piece.basis)
            gram = Matrix(
                [
                    [
                        _i_power(p - q) * form_value(form.gram, u, vec_conj(v))
                        for v in basis
                    ]
                    for u in basis
                ]
            )
            if not hermitian_positive(gram):
                good = False
        verdicts[table.level] = good
    return verdicts


# -- the boundary report ------------------------------------------------------------


@dataclass(frozen=True)
class LevelReport:
    """One row of the boundary report: the level c+l quotient with its
    induced form, primitive part, limit table, and the classifying space
    those determine."""

    level: int
    weight: int
    dim_graded: int
    dim_primitive: int
    sign: int
    nondegenerate_on_graded: bool
    signature: Optional[tuple[int, int, int]]
    f_table: dict[int, int]
    hodge_numbers: tuple[int, ...]
    polarized: bool
    dim_classifying: int
    dim_form_symmetries: int


@dataclass(frozen=True)
class FibrationData:
    """Group dimensions of the fibration the boundary component carries:
    base data from the anisotropic Levi factor, fibre data from the
    product of form symmetry algebras."""

    dim_m: int
    dim_centralizer_cap_m: int
    dim_isotropy_cap_m: int
    sum_dim_form_symmetries: int
    dim_primitive_classifying: int


@dataclass(frozen=True)
class BoundaryReport:
    center: int
    levels: tuple[LevelReport, ...]
    fibration: Optional[FibrationData]
    g_infinity: Matrix
    trivial_on_graded: bool
    limit_matches_basepoint: bool


def _classifying_dimension(hodge_numbers: tuple[int, ...]) -> int:
    """Complex dimension of the classifying space with the given Hodge
    numbers, after twisting away zero margins (the parity of the weight,
    hence the form type, is preserved)."""
    values = list(hodge_numbers)
    while values and values[0] == 0 and values[-1] == 0:
        values = values[1:-1]
    if not values or sum(values) == 0:
        return 0
    model = HodgeFrame(len(values) - 1, values)
    return domain_dimensions(model)["dim_D_complex"]


def _unit_matrix(k: int, a: int, b: int) -> Matrix:
    return Matrix(
        [[ONE if (i, j) == (a, b) else ZERO for j in range(k)] for i in range(k)]
    )


def _symmetry_algebra_dim(gram: Matrix) -> int:
    """Dimension of the algebra of infinitesimal symmetries of a
    nondegenerate bilinear form: solutions of X^T G + G X = 0."""
    k = gram.nrows
    columns = []
    for a in range(k):
        for b in range(k):
            unit = _unit_matrix(k, a, b)
            columns.append(flatten(unit.transpose() @ gram + gram @ unit))
    return len(kernel_basis(Matrix.from_cols(columns)))


def _isotropy_flat(frame: HodgeFrame) -> Subspace:
    d = frame.dim
    return Subspace(
        [flatten(frame.graded_piece(b, 0)) for b in frame.isometry_algebra_basis()],
        d * d,
    )


def boundary_report(
    frame: HodgeFrame,
    n: Matrix,
    f_inf: Filtration,
    parabolic: Optional[CanonicalParabolic] = None,
    rr: Optional[RestrictedRoots] = None,
) -> BoundaryReport:
    """Assemble the full boundary component report of a nilpotent and a
    limit filtration.

    Per level: quotient and primitive dimensions, form parity, signature
    when symmetric, the limit dimension table with its Hodge numbers, the
    polarization verdict, the dimension of the classifying space those
    numbers cut out, and the dimension of the symmetry algebra of the
    induced form on the primitive part.  The fibration data cross-checks
    the centralizer identity: the centralizer of n inside the anisotropic
    Levi factor must match the sum of form symmetry algebras.  For n = 0
    the parabolic degenerates to the whole group, no fibration data
    applies, and the single level-0 row describes the domain itself.

    The recorded g_infinity = exp(-i n) is certified to act trivially on
    every graded quotient; limit_matches_basepoint records whether it
    carries the reference filtration to f_inf (true for the filtration of
    a semisimple-adapted orbit, not required in general).
    """
    if not frame.in_isometry_algebra(n):
        raise ValueError("matrix not in the isometry algebra")
    d = frame.dim
    if f_inf.ambient != d:
        raise ValueError("filtration does not live on the frame's space")
    if n.is_zero():
        parabolic = None
        w = weight_filtration(frame, n, "H")
    else:
        if parabolic is None and rr is None:
            rr = restrict_roots(frame)
        triple = jm_triple(frame, n, rr)
        w = weight_filtration(frame, n, "H", triple=triple, rr=rr)
        if parabolic is None:
            parabolic = canonical_parabolic(rr, triple)
    pieces = graded_pieces(w, n)
    primitives = primitive_parts(n, w, pieces)
    forms = {
        part.level: induced_form(frame.polarization, n, w, part.level, pieces)
        for part in primitives
    }
    limit = limit_hodge_numbers(f_inf, primitives)
    polarized = polarization_check(limit, forms)
    tables = {t.level: t for t in limit.tables}

    levels = []
    sum_dim_o = 0
    for part in primitives:
        form = forms[part.level]
        table = tables[part.level]
        if part.dim == 0:
            dim_o = 0
        else:
            basis = list(part.space.basis)
            gram_p = Matrix(
                [[form_value(form.gram, u, v) for v in basis] for u in basis]
            )
            if kernel_basis(gram_p):
                raise AssertionError("induced form degenerate on the primitive part")
            dim_o = _symmetry_algebra_dim(gram_p)
        sum_dim_o += dim_o
        hodge = table.hodge_numbers()
        levels.append(
            LevelReport(
                level=part.level,
                weight=part.weight,
                dim_graded=pieces.dim(part.weight),
                dim_primitive=part.dim,
                sign=form.sign,
                nondegenerate_on_graded=form.nondegenerate_on_graded,
                signature=form.signature,
                f_table=table.f_table,
                hodge_numbers=hodge,
                polarized=polarized[part.level],
                dim_classifying=_classifying_dimension(hodge),
                dim_form_symmetries=dim_o,
            )
        )

    g_inf = nilpotent_exp(n, -I)
    shifted = g_inf - Matrix.identity(d)
    for j in pieces.levels():
        lower = w.piece(j - 1)
        for v in pieces.lifts[j]:
            if not lower.contains_vector(shifted.apply(v)):
                raise AssertionError("limit translation acts on a graded quotient")
    reference = frame.reference_filtration()
    moved = Filtration(
        reference.weight, [p.image_under(g_inf) for p in reference.pieces]
    )

    fibration = None
    if parabolic is not None:
        m_q = parabolic.anisotropic
        z_cap_m = kernel_subspace(_ad_matrix(n)).intersect(m_q).dim
        if z_cap_m != sum_dim_o:
            raise AssertionError(
                "centralizer inside the anisotropic factor does not match the form symmetries"
            )
        fibration = FibrationData(
            dim_m=m_q.dim,
            dim_centralizer_cap_m=z_cap_m,
            dim_isotropy_cap_m=_isotropy_flat(frame).intersect(m_q).dim,
            sum_dim_form_symmetries=sum_dim_o,
            dim_primitive_classifying=sum(r.dim_classifying for r in levels),
        )

    return BoundaryReport(
        center=w.center,
        levels=tuple(levels),
        fibration=fibration,
        g_infinity=g_inf,
        trivial_on_graded=True,
        limit_matches_basepoint=moved == f_inf,
    )
