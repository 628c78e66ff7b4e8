"""Structure theory of rational nilpotent degenerations.

Four layers, each feeding the next: logarithms of quasi-unipotent
monodromy matrices; sl(2) triples through a nilpotent of the isometry
algebra (Jacobson-Morozov, solved as exact linear systems); the weight
filtration of a nilpotent on the underlying space or on the algebra,
computed three independent ways; and the canonical parabolic subalgebra
of a triple with its split center, nilradical and anisotropic Levi part,
together with weighted Dynkin labels and the horizontality test for
restricted-root data.

Conventions: a triple (N, Y, N+) satisfies [Y, N] = -2N, [Y, N+] = 2N+,
[N+, N] = Y, so N lowers and N+ raises eigenvalues of Y.  Weight
filtrations are increasing; level c + j collects eigenvalues <= j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .domain import HodgeFrame
from .linalg import (
    Matrix,
    Subspace,
    bracket,
    charpoly,
    extend_basis,
    flatten,
    form_value,
    image_subspace,
    kernel_basis,
    kernel_subspace,
    nilpotent_exp,
    solve_vector,
    unflatten,
    unipotent_log,
    vec_scale,
)
from .roots import RestrictedRoots, Root, _split_by_operator
from .scalars import ONE, ZERO, Scalar

Coords = tuple[int, ...]


# -- quasi-unipotent logarithms ------------------------------------------------


@dataclass(frozen=True)
class MonodromyElement:
    """A quasi-unipotent matrix with its torsion order and nilpotent log:
    matrix**order = exp(order * log)."""

    matrix: Matrix
    order: int
    log: Matrix


def _totient(d: int) -> int:
    return sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)


def _poly_trim(p: list[Scalar]) -> list[Scalar]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _poly_divmod(num: list[Scalar], den: list[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    """Quotient and remainder of polynomials given by ascending coefficient
    lists; the divisor must be monic."""
    if not den or not (den[-1] - ONE).is_zero():
        raise ValueError("division by a non-monic polynomial")
    deg = len(den) - 1
    work = list(num)
    if len(work) <= deg:
        return [], _poly_trim(work)
    quot = [ZERO] * (len(work) - deg)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c.is_zero():
            continue
        quot[i - deg] = c
        for j, d in enumerate(den):
            work[i - deg + j] = work[i - deg + j] - c * d
    return _poly_trim(quot), _poly_trim(work[:deg])


def _cyclotomics(dim: int) -> dict[int, list[Scalar]]:
    """Cyclotomic polynomials of every order whose degree fits in dim,
    ascending coefficients.  phi(d) >= sqrt(d/2) bounds the search."""
    out: dict[int, list[Scalar]] = {}
    for d in range(1, 2 * dim * dim + 2):
        if _totient(d) > dim:
            continue
        poly = [Scalar(-1)] + [ZERO] * (d - 1) + [ONE]
        for e, q in out.items():
            if e < d and d % e == 0:
                poly, rem = _poly_divmod(poly, q)
                if rem:
                    raise AssertionError("cyclotomic division left a remainder")
        out[d] = poly
    return out


def monodromy_log(gamma: Matrix) -> MonodromyElement:
    """Torsion order l and nilpotent logarithm N of a quasi-unipotent
    matrix: gamma**l = exp(l*N), with l least.

    Quasi-unipotence is decided exactly: the characteristic polynomial
    must be a product of cyclotomic polynomials, and l is the least
    common multiple of their orders.
    """
    if not gamma.is_square():
        raise ValueError("monodromy matrix must be square")
    dim = gamma.nrows
    poly = _poly_trim(list(charpoly(gamma)))
    orders: list[int] = []
    for d, cyc in sorted(_cyclotomics(dim).items()):
        while len(poly) > 1:
            quot, rem = _poly_divmod(poly, cyc)
            if rem:
                break
            poly = quot if quot else [ONE]
            orders.append(d)
    if len(poly) != 1 or not (poly[0] - ONE).is_zero():
        raise ValueError("monodromy not quasi-unipotent")
    order = math.lcm(*orders) if orders else 1
    power = gamma ** order
    log = unipotent_log(power) * Scalar(Fraction(1, order))
    if nilpotent_exp(log, order) != power:
        raise AssertionError("logarithm does not exponentiate back")
    if not bracket(gamma, log).is_zero():
        raise AssertionError("logarithm does not commute with the monodromy")
    return MonodromyElement(matrix=gamma, order=order, log=log)


# -- sl(2) triples -------------------------------------------------------------


@dataclass(frozen=True)
class SL2Triple:
    """Lowering, semisimple and raising members of an sl(2) embedding:
    [split, lowering] = -2 lowering, [split, raising] = 2 raising,
    [raising, lowering] = split."""

    lowering: Matrix
    split: Matrix
    raising: Matrix


def _combine(basis: Sequence[Matrix], coeffs: Sequence[Scalar]) -> Matrix:
    total = Matrix.zeros(basis[0].nrows, basis[0].ncols)
    for c, b in zip(coeffs, basis):
        if not c.is_zero():
            total = total + b * c
    return total


def jm_triple(
    frame: HodgeFrame, n: Matrix, rr: Optional[RestrictedRoots] = None
) -> SL2Triple:
    """Complete a nonzero rational nilpotent of the isometry algebra to an
    sl(2) triple by solving the standard chain of linear systems.

    When restricted-root data is supplied and the split torus admits a
    valid semisimple member, that member is preferred, so nilpotents
    built from the stored root vectors get triples aligned with the
    torus.
    """
    if not frame.in_isometry_algebra(n):
        raise ValueError("matrix not in the isometry algebra")
    if n.is_zero():
        raise ValueError("zero nilpotent has no triple")
    d = frame.dim
    if not (n ** d).is_zero():
        raise ValueError("matrix not nilpotent")
    basis = frame.isometry_algebra_basis()
    ad_cols = [flatten(bracket(n, b)) for b in basis]
    image = Subspace(ad_cols, d * d)
    target = vec_scale(2, flatten(n))

    split: Optional[Matrix] = None
    if rr is not None:
        gens = rr.split_generators()
        sol = solve_vector(
            Matrix.from_cols([flatten(bracket(n, t)) for t in gens]), target
        )
        if sol is not None:
            candidate = _combine(gens, sol)
            if image.contains_vector(flatten(candidate)):
                split = candidate
    if split is None:
        # solve [n, Y] = 2n inside the image of ad(n), which is where a
        # completable semisimple member always exists
        image_elems = [unflatten(v, d, d) for v in image.basis]
        sol = solve_vector(
            Matrix.from_cols([flatten(bracket(n, x)) for x in image_elems]), target
        )
        if sol is None:
            raise AssertionError("no semisimple partner in the image of ad(n)")
        split = _combine(image_elems, sol)

    # raising member: first any p with [n, p] = -split, then correct it
    # inside the centralizer of n so that [split, p] = 2p
    sol = solve_vector(Matrix.from_cols(ad_cols), vec_scale(-1, flatten(split)))
    if sol is None:
        raise AssertionError("semisimple member left the image of ad(n)")
    p0 = _combine(basis, sol)
    defect = bracket(split, p0) - p0 * Scalar(2)
    if not bracket(n, defect).is_zero():
        raise AssertionError("raising defect left the centralizer")
    raising = p0
    if not defect.is_zero():
        cent = [
            _combine(basis, coeffs)
            for coeffs in kernel_basis(Matrix.from_cols(ad_cols))
        ]
        cols = [flatten(bracket(split, zc) - zc * Scalar(2)) for zc in cent]
        sol = solve_vector(Matrix.from_cols(cols), vec_scale(-1, flatten(defect)))
        if sol is None:
            raise AssertionError("correction system for the raising member failed")
        raising = p0 + _combine(cent, sol)

    triple = SL2Triple(lowering=n, split=split, raising=raising)
    _assert_triple_relations(triple)
    return triple


def _assert_triple_relations(t: SL2Triple) -> None:
    if bracket(t.split, t.lowering) != t.lowering * Scalar(-2):
        raise AssertionError("lowering relation fails")
    if bracket(t.split, t.raising) != t.raising * Scalar(2):
        raise AssertionError("raising relation fails")
    if bracket(t.raising, t.lowering) != t.split:
        raise AssertionError("pairing relation fails")


# -- weight filtrations --------------------------------------------------------


class WeightFiltration:
    """Increasing exhaustive filtration of a space, centered at an integer.

    Levels below the stored window are zero; levels above it equal the
    top piece (the whole filtered space, which for algebra filtrations
    is the algebra inside its flattened ambient)."""

    def __init__(self, center: int, pieces: dict[int, Subspace], ambient: int) -> None:
        if not pieces:
            raise ValueError("a filtration needs at least one piece")
        self.center = center
        self.ambient = ambient
        self._pieces = dict(sorted(pieces.items()))
        keys = sorted(self._pieces)
        self.lowest = keys[0]
        self.highest = keys[-1]
        self.top = self._pieces[self.highest]
        previous: Optional[Subspace] = None
        for k in keys:
            s = self._pieces[k]
            if s.ambient != ambient:
                raise ValueError("piece lives in the wrong ambient space")
            if previous is not None and not s.contains(previous):
                raise ValueError("filtration is not increasing")
            previous = s

    def piece(self, k: int) -> Subspace:
        if k < self.lowest:
            return Subspace.zero(self.ambient)
        if k > self.highest:
            return self.top
        while k not in self._pieces:
            k -= 1
        return self._pieces[k]

    def graded_dim(self, k: int) -> int:
        return self.piece(k).dim - self.piece(k - 1).dim

    def levels(self) -> list[int]:
        return [
            k
            for k in range(self.lowest, self.highest + 1)
            if self.graded_dim(k) != 0
        ]

    def graded_dims(self) -> dict[int, int]:
        return {k: self.graded_dim(k) for k in self.levels()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightFiltration):
            return NotImplemented
        if self.center != other.center or self.ambient != other.ambient:
            return False
        lo = min(self.lowest, other.lowest)
        hi = max(self.highest, other.highest)
        return all(self.piece(k) == other.piece(k) for k in range(lo, hi + 1))

    def __repr__(self) -> str:
        dims = ", ".join(f"{k}:{self.piece(k).dim}" for k in range(self.lowest, self.highest + 1))
        return f"WeightFiltration(center={self.center}, dims=[{dims}])"


def _ad_matrix(x: Matrix) -> Matrix:
    """Matrix of ad(x) = [x, .] on flattened (row-major) d x d matrices."""
    d = x.nrows
    rows = [[ZERO] * (d * d) for _ in range(d * d)]
    for a in range(d):
        for b in range(d):
            dst = a * d + b
            for j in range(d):
                # entry (a,b) of x E_{jb} is x[a,j]; of E_{aj} x is x[j,b]
                rows[dst][j * d + b] = rows[dst][j * d + b] + x[a, j]
                rows[dst][a * d + j] = rows[dst][a * d + j] - x[j, b]
    return Matrix(rows)


def _nilpotency_exponent(a: Matrix) -> int:
    """Least e with a**(e+1) = 0; raises if a is not nilpotent."""
    power = Matrix.identity(a.nrows)
    for e in range(a.nrows + 1):
        if (power @ a).is_zero():
            return e
        power = power @ a
    raise ValueError("matrix not nilpotent")


def _restrict_operator(op: Matrix, within: Subspace) -> Matrix:
    cols = []
    for b in within.basis:
        coords = within.coordinates_of(op.apply(b))
        if coords is None:
            raise ValueError("operator does not preserve the subspace")
        cols.append(coords)
    return Matrix.from_cols(cols) if cols else Matrix.zeros(0, 0)


def _unrestrict(space: Subspace, within: Subspace) -> Subspace:
    vectors = []
    for v in space.basis:
        total = [ZERO] * within.ambient
        for c, b in zip(v, within.basis):
            if not c.is_zero():
                total = [t + c * x for t, x in zip(total, b)]
        vectors.append(tuple(total))
    return Subspace(vectors, within.ambient)


def _powers_pieces(a: Matrix) -> dict[int, Subspace]:
    """Closed-form weight filtration of a nilpotent coordinate matrix,
    centered at zero: W_t = sum over j >= max(t, 0) of
    ker a^(j+1) intersect im a^(j-t)."""
    r = a.nrows
    if r == 0:
        return {0: Subspace.zero(0)}
    e = _nilpotency_exponent(a)
    kernels = [kernel_subspace(a ** (j + 1)) for j in range(e + 1)]
    images = [image_subspace(a ** i) for i in range(e + 1)]
    pieces: dict[int, Subspace] = {}
    for t in range(-e, e + 1):
        total = Subspace.zero(r)
        for j in range(max(t, 0), e + 1):
            if j - t > e:
                continue
            total = total.sum_with(kernels[j].intersect(images[j - t]))
        pieces[t] = total
    return pieces


def _induction_pieces(a: Matrix) -> dict[int, Subspace]:
    """Weight filtration of a nilpotent coordinate matrix centered at
    zero, by the two-sided induction: fix the outermost levels with
    ker a^e and im a^e, then recurse on the subquotient between them."""
    r = a.nrows
    if r == 0:
        return {0: Subspace.zero(0)}
    e = _nilpotency_exponent(a)
    full = Subspace.full(r)
    if e == 0:
        return {0: full}
    ker = kernel_subspace(a ** e)
    img = image_subspace(a ** e)
    lifts = extend_basis(img, ker)
    pieces: dict[int, Subspace] = {-e: img, e - 1: ker, e: full}
    if lifts:
        # induced operator on ker/img in lift coordinates
        frame_cols = Matrix.from_cols(list(img.basis) + lifts)
        induced = []
        for l in lifts:
            sol = solve_vector(frame_cols, a.apply(l))
            if sol is None:
                raise AssertionError("operator left the kernel of its power")
            induced.append(sol[img.dim :])
        inner = _induction_pieces(Matrix.from_cols(induced))
        inner_lo = min(inner)
        inner_hi = max(inner)
        for t in range(-e + 1, e - 1):
            if t < inner_lo:
                level = Subspace.zero(len(lifts))
            elif t > inner_hi:
                level = inner[inner_hi]
            else:
                level = inner[max(k for k in inner if k <= t)]
            vectors = []
            for v in level.basis:
                total = [ZERO] * r
                for c, b in zip(v, lifts):
                    if not c.is_zero():
                        total = [x + c * y for x, y in zip(total, b)]
                vectors.append(tuple(total))
            pieces[t] = img.sum_with(Subspace(vectors, r))
    else:
        for t in range(-e + 1, e - 1):
            pieces[t] = img
    return pieces


def _assemble(
    center: int, coordinate_pieces: dict[int, Subspace], within: Subspace
) -> WeightFiltration:
    pieces = {
        center + t: _unrestrict(s, within) for t, s in coordinate_pieces.items()
    }
    return WeightFiltration(center, pieces, within.ambient)


def weight_filtration_by_powers(
    op: Matrix, c: int, within: Optional[Subspace] = None
) -> WeightFiltration:
    """Weight filtration of a nilpotent operator from kernels and images
    of its powers alone, no triple involved."""
    if within is None:
        within = Subspace.full(op.ncols)
    return _assemble(c, _powers_pieces(_restrict_operator(op, within)), within)


def weight_filtration_by_induction(
    op: Matrix, c: int, within: Optional[Subspace] = None
) -> WeightFiltration:
    """Weight filtration by the recursive two-sided induction."""
    if within is None:
        within = Subspace.full(op.ncols)
    return _assemble(c, _induction_pieces(_restrict_operator(op, within)), within)


def weight_filtration(
    frame: HodgeFrame,
    n: Matrix,
    space: str = "H",
    c: Optional[int] = None,
    triple: Optional[SL2Triple] = None,
    rr: Optional[RestrictedRoots] = None,
) -> WeightFiltration:
    """Weight filtration of a nilpotent n of the isometry algebra, on the
    underlying space ("H", default center = the weight) or on the algebra
    by ad(n) ("g", default center = 0).

    Production route: split by eigenvalues of the semisimple member of an
    sl(2) triple through n, then verify the two defining invariants
    (n W_k inside W_{k-2}, and n^l inducing Gr isomorphisms).  On the
    underlying space the polarization pairing S(W_l, W_l') = 0 for
    l + l' < 2c is asserted as well.
    """
    if space not in ("H", "g"):
        raise ValueError("space tag must be 'H' or 'g'")
    if not frame.in_isometry_algebra(n):
        raise ValueError("matrix not in the isometry algebra")
    d = frame.dim
    if not (n ** d).is_zero():
        raise ValueError("matrix not nilpotent")
    if c is None:
        c = frame.weight if space == "H" else 0
    if n.is_zero():
        if space == "H":
            return WeightFiltration(c, {c: Subspace.full(d)}, d)
        g_flat = Subspace([flatten(b) for b in frame.isometry_algebra_basis()], d * d)
        return WeightFiltration(c, {c: g_flat}, d * d)
    if triple is None:
        triple = jm_triple(frame, n, rr)
    elif triple.lowering != n:
        raise ValueError("triple does not pass through the given nilpotent")

    if space == "H":
        split_op = triple.split
        pairs = []
        total = 0
        for j in range(-(d - 1), d):
            ker = kernel_subspace(split_op - Matrix.identity(d) * Scalar(j))
            if ker.dim:
                pairs.append((j, ker))
                total += ker.dim
        if total != d:
            raise AssertionError("semisimple member is not integrally diagonalizable")
        op_matrix = n
        ambient = d
    else:
        g_flat = Subspace([flatten(b) for b in frame.isometry_algebra_basis()], d * d)
        bound = 2 * (d - 1)
        split = triple.split
        table = _split_by_operator(
            g_flat,
            lambda x: bracket(split, x),
            [Scalar(j) for j in range(-bound, bound + 1)],
            d,
        )
        pairs = sorted(
            (int(lam.as_fraction()), piece) for lam, piece in table.items()
        )
        op_matrix = _ad_matrix(n)
        ambient = d * d

    pairs.sort(key=lambda kv: kv[0])
    pieces: dict[int, Subspace] = {}
    running = Subspace.zero(ambient)
    lo = pairs[0][0]
    hi = pairs[-1][0]
    by_eigen = dict(pairs)
    for j in range(lo, hi + 1):
        if j in by_eigen:
            running = running.sum_with(by_eigen[j])
        pieces[c + j] = running
    result = WeightFiltration(c, pieces, ambient)

    for k in range(result.lowest, result.highest + 1):
        if not result.piece(k - 2).contains(result.piece(k).image_under(op_matrix)):
            raise AssertionError("nilpotent does not shift the filtration by -2")
    for l in range(0, hi + 1):
        if result.graded_dim(c + l) != result.graded_dim(c - l):
            raise AssertionError("graded dimensions are not symmetric about the center")
        moved = result.piece(c + l).image_under(op_matrix ** l)
        if moved.sum_with(result.piece(c - l - 1)) != result.piece(c - l):
            raise AssertionError("power of the nilpotent does not induce a Gr isomorphism")
    if space == "H":
        s = frame.polarization
        for k in range(result.lowest, result.highest + 1):
            for k2 in range(result.lowest, k + 1):
                if (k - c) + (k2 - c) < 0:
                    for u in result.piece(k).basis:
                        for w in result.piece(k2).basis:
                            if not form_value(s, u, w).is_zero():
                                raise AssertionError(
                                    "polarization does not vanish on low filtration levels"
                                )
    return result


# -- canonical parabolic subalgebras -------------------------------------------


def _split_coordinates(rr: RestrictedRoots, y: Matrix) -> tuple[Fraction, ...]:
    """Coordinates of a semisimple member on the split generators."""
    cols = [flatten(t) for t in rr.split_generators()]
    sol = solve_vector(Matrix.from_cols(cols), flatten(y))
    if sol is None:
        raise ValueError("Y not aligned with Σ; re-run basepoint alignment")
    return tuple(s.as_fraction() for s in sol)


def _root_value(coords: Coords, y_coords: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(a) * c for a, c in zip(coords, y_coords)), Fraction(0))


@dataclass(frozen=True)
class CanonicalParabolic:
    """The canonical parabolic of an sl(2) triple, in both descriptions,
    with its Langlands pieces.  All subspaces are flattened algebra
    subspaces of the ambient d*d coordinate space."""

    algebra: Subspace
    simple_roots: tuple[Coords, ...]
    vanishing: tuple[Coords, ...]
    split_center: Subspace
    root_sum: Subspace
    nilradical: Subspace
    levi: Subspace
    anisotropic: Subspace
    y_coords: tuple[Fraction, ...]


def canonical_parabolic(rr: RestrictedRoots, triple: SL2Triple) -> CanonicalParabolic:
    """Canonical parabolic q of a triple whose semisimple member lies in
    the split torus: the nonpositive eigenvalue part of ad(Y), equal to
    the centralizer of the split center plus the positive root spaces
    not vanishing on it.

    The simple system is reordered so roots negative on Y are positive;
    the vanishing subset I cuts out the split center a_I; the anisotropic
    piece is the trace-form complement of a_I in its centralizer, stable
    under the Cartan involution.
    """
    frame = rr.frame
    d = frame.dim
    y_coords = _split_coordinates(rr, triple.split)
    simple = tuple(rr.simple_roots(y_coords))
    if any(_root_value(a, y_coords) > 0 for a in simple):
        raise AssertionError("ordering incompatible with Y; rerun with these coordinates")
    vanishing = tuple(a for a in simple if _root_value(a, y_coords) == 0)

    gen_cols = [flatten(t) for t in rr.split_generators()]
    if vanishing:
        rows = [[Scalar(x) for x in alpha] for alpha in vanishing]
        combos = kernel_basis(Matrix(rows))
        split_center = Subspace(
            [flatten(_combine(rr.split_generators(), c)) for c in combos], d * d
        )
    else:
        split_center = Subspace(gen_cols, d * d)
    if not split_center.contains_vector(flatten(triple.split)):
        raise AssertionError("semisimple member fell outside the split center")

    basis = frame.isometry_algebra_basis()
    center_elems = [unflatten(v, d, d) for v in split_center.basis]
    columns = [
        tuple(
            entry
            for t in center_elems
            for entry in flatten(bracket(t, b))
        )
        for b in basis
    ]
    levi_combos = kernel_basis(Matrix.from_cols(columns))
    levi = Subspace([flatten(_combine(basis, c)) for c in levi_combos], d * d)

    root_sum = Subspace.zero(d * d)
    for beta in rr.positive_roots(y_coords):
        if _root_value(beta, y_coords) != 0:
            root_sum = root_sum.sum_with(rr.root_spaces[beta])

    filtration = weight_filtration(
        frame, triple.lowering, space="g", c=0, triple=triple
    )
    algebra = filtration.piece(0)
    nilradical = filtration.piece(-1)
    if algebra != levi.sum_with(root_sum):
        raise AssertionError("eigenvalue and root descriptions of q disagree")

    levi_elems = [unflatten(v, d, d) for v in levi.basis]
    trace_rows = [
        tuple((unflatten(v, d, d) @ t).trace() for v in levi.basis)
        for t in center_elems
    ]
    if trace_rows:
        combos = kernel_basis(Matrix(trace_rows))
        anisotropic = Subspace(
            [flatten(_combine(levi_elems, c)) for c in combos], d * d
        )
    else:
        anisotropic = levi
    if anisotropic.intersect(split_center).dim != 0:
        raise AssertionError("anisotropic part meets the split center")
    if anisotropic.dim + split_center.dim != levi.dim:
        raise AssertionError("Langlands pieces do not fill the Levi part")

    return CanonicalParabolic(
        algebra=algebra,
        simple_roots=simple,
        vanishing=vanishing,
        split_center=split_center,
        root_sum=root_sum,
        nilradical=nilradical,
        levi=levi,
        anisotropic=anisotropic,
        y_coords=y_coords,
    )


# -- weighted Dynkin labels ----------------------------------------------------


@dataclass(frozen=True)
class WeightedDynkinDiagram:
    """Simple roots of the Y-adapted ordering with both the raw values
    alpha(Y) and the diagram labels -alpha(Y)."""

    simple_roots: tuple[Coords, ...]
    values: tuple[Fraction, ...]
    labels: tuple[Fraction, ...]


def weighted_dynkin(rr: RestrictedRoots, triple: SL2Triple) -> WeightedDynkinDiagram:
    """Weighted Dynkin labels -alpha(Y) on the simple roots of the
    Y-adapted ordering; labels outside {0, 1, 2} are rejected because a
    Jacobson-Morozov triple never produces them."""
    y_coords = _split_coordinates(rr, triple.split)
    simple = tuple(rr.simple_roots(y_coords))
    values = tuple(_root_value(a, y_coords) for a in simple)
    labels = tuple(-v for v in values)
    if any(l not in (0, 1, 2) for l in labels):
        raise ValueError(f"weighted Dynkin labels outside 0..2: {labels}")
    return WeightedDynkinDiagram(simple_roots=simple, values=values, labels=labels)


# -- horizontality -------------------------------------------------------------


@dataclass(frozen=True)
class HorizontalityWitness:
    """Verdict of the horizontality test with the restricted classes that
    carry components of the nilpotent and its Cayley transport."""

    horizontal: bool
    contributing: tuple[Coords, ...]
    degrees: dict[Coords, tuple[int, ...]]
    transported: Matrix


CoefficientMap = dict[Coords, Union[Fraction, int, Sequence[Fraction]]]


def horizontality_check(
    rr: RestrictedRoots,
    n: Optional[Matrix] = None,
    coefficients: Optional[CoefficientMap] = None,
) -> HorizontalityWitness:
    """Decide whether a nilpotent is horizontal, two independent ways.

    Route one decomposes n over the restricted root spaces and asks that
    the negative of every contributing class consist of grading-level -1
    roots only.  Route two conjugates n by the Cayley element and asks
    that the result lie in grading level +1.  The two answers must agree.

    Automatic decomposition needs every component to sit in a class with
    a stored generator (multiplicity one); otherwise supply coefficients:
    a rational per multiplicity-one class, or a coefficient sequence over
    the echelon basis of a higher-multiplicity root space.
    """
    frame = rr.frame
    d = frame.dim
    if n is not None and not (n ** d).is_zero():
        raise ValueError("matrix not nilpotent")
    if coefficients is None:
        if n is None:
            raise ValueError("need a nilpotent matrix or its coefficients")
        center, components = rr.decompose(n)
        if not center.is_zero():
            raise ValueError("decomposition unavailable; supply coefficients")
        for coords in components:
            if rr.table[coords].vector is None:
                raise ValueError("decomposition unavailable; supply coefficients")
        support = tuple(sorted(components))
    else:
        total = Matrix.zeros(d, d)
        support_list = []
        for coords, value in sorted(coefficients.items()):
            if coords not in rr.table:
                raise ValueError(f"unknown restricted root {coords}")
            if isinstance(value, (Fraction, int)):
                stored = rr.table[coords].vector
                if stored is None:
                    raise ValueError(
                        "class has no stored generator; give a coefficient sequence"
                    )
                part = stored * Scalar(Fraction(value))
            else:
                space = rr.root_spaces[coords]
                seq = list(value)
                if len(seq) != space.dim:
                    raise ValueError("coefficient sequence length does not match the root space")
                part = unflatten(
                    tuple(
                        sum((Scalar(Fraction(c)) * x for c, x in zip(seq, column)), ZERO)
                        for column in zip(*space.basis)
                    ),
                    d,
                    d,
                )
            if not part.is_zero():
                support_list.append(coords)
                total = total + part
        if n is not None and n != total:
            raise ValueError("coefficients do not rebuild the given nilpotent")
        n = total
        support = tuple(support_list)

    if not (n ** d).is_zero():
        raise ValueError("matrix not nilpotent")
    level_minus_one = set(rr.of_degree(-1))
    degrees = {coords: rr.table[coords].degrees for coords in support}
    route_roots = all(
        tuple(-x for x in coords) in level_minus_one for coords in support
    )
    transported = rr.cayley @ n @ rr.cayley_inverse
    route_grading = frame.graded_piece(transported, 1) == transported
    if route_roots != route_grading:
        raise AssertionError("horizontality criteria disagree")
    return HorizontalityWitness(
        horizontal=route_roots,
        contributing=support,
        degrees=degrees,
        transported=transported,
    )


# -- alignment of Y with the strongly orthogonal set ---------------------------


@dataclass(frozen=True)
class SigmaDecomposition:
    """Y written over the split generators with coefficients 0 or +-1,
    and the sign-normalized support: the restricted classes and weight
    roots whose sl(2)s the horizontal action is built from."""

    coefficients: tuple[int, ...]
    support: tuple[Coords, ...]
    roots: tuple[Root, ...]


def sl2_decompose_Y(rr: RestrictedRoots, triple: SL2Triple) -> SigmaDecomposition:
    """Write the semisimple member over the split generators.  Horizontal
    actions only ever produce coefficients 0 and +-1; signs are then
    flipped away by replacing a root with its negative."""
    y_coords = _split_coordinates(rr, triple.split)
    coefficients = []
    for c in y_coords:
        if c not in (-1, 0, 1):
            raise ValueError(
                "coefficients outside 0, +1, -1; the action is not horizontal of unit type"
            )
        coefficients.append(int(c))
    support = []
    roots = []
    for j, (a, gamma) in enumerate(zip(coefficients, rr.sigma)):
        if a == 0:
            continue
        cls = [0] * rr.rank
        cls[j] = 2 * a
        support.append(tuple(cls))
        root = gamma if a == 1 else tuple(-x for x in gamma)
        roots.append(root)
    return SigmaDecomposition(
        coefficients=tuple(coefficients),
        support=tuple(support),
        roots=tuple(roots),
    )
