"""Polarized Hodge structures in a canonical exact basis.

A frame fixes, for a given weight and Hodge numbers, a rational basis of
the underlying vector space together with the polarization form, the
reference Hodge filtration, and a compact torus adapted to it.  The basis
comes in two-dimensional blocks (e_j, f_j), one per conjugate pair of
Hodge-basis vectors v_j = e_j - i f_j, with an optional single extra
vector when the middle Hodge number is odd.  All membership tests for the
compact dual and the period domain, the Weil operator, and the graded
pieces of the isometry algebra are computed exactly over Q(i, sqrt2).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .linalg import (
    Matrix,
    Subspace,
    Vector,
    flatten,
    form_value,
    hermitian_positive,
    inverse,
    kernel_basis,
    unflatten,
    vec_conj,
)
from .scalars import I, ONE, ZERO, Scalar


def _i_power(k: int) -> Scalar:
    return I ** (k % 4)


class HodgeFrame:
    """Canonical basis, polarization, and reference structure for one
    choice of weight and Hodge numbers."""

    def __init__(self, weight: int, hodge_numbers: Sequence[int]) -> None:
        hodge_numbers = tuple(int(h) for h in hodge_numbers)
        if weight < 0:
            raise ValueError("weight must be nonnegative")
        if len(hodge_numbers) != weight + 1:
            raise ValueError(
                f"need {weight + 1} Hodge numbers for weight {weight}, got {len(hodge_numbers)}"
            )
        if any(h < 0 for h in hodge_numbers):
            raise ValueError("Hodge numbers must be nonnegative")
        if hodge_numbers != hodge_numbers[::-1]:
            raise ValueError("Hodge numbers must be symmetric under p <-> q")
        if sum(hodge_numbers) == 0:
            raise ValueError("Hodge numbers must not all vanish")
        self.weight = weight
        self.hodge_numbers = hodge_numbers
        # h^{p,q} indexed so hodge_numbers[p] = dim H^{p, weight-p}.
        # Blocks are listed by decreasing p > weight/2, then middle pairs.
        pair_types: list[int] = []
        for p in range(weight, (weight - 1) // 2, -1):
            q = weight - p
            if p < q:
                continue
            h = hodge_numbers[p]
            if p > q:
                pair_types.extend([p] * h)
            else:
                pair_types.extend([p] * (h // 2))
        self.pair_types = tuple(pair_types)
        self.num_pairs = len(pair_types)
        middle_odd = weight % 2 == 0 and hodge_numbers[weight // 2] % 2 == 1
        self.zero_index: Optional[int] = 2 * self.num_pairs if middle_odd else None
        self.dim = 2 * self.num_pairs + (1 if middle_odd else 0)
        self.polarization = self._build_polarization()
        self._projectors: dict[int, Matrix] = {}

    # -- basis bookkeeping --------------------------------------------------

    def e_index(self, j: int) -> int:
        return 2 * j

    def f_index(self, j: int) -> int:
        return 2 * j + 1

    def hodge_vector(self, j: int) -> Vector:
        """v_j = e_j - i f_j, a basis vector of H^{p_j, weight - p_j}."""
        v = [ZERO] * self.dim
        v[self.e_index(j)] = ONE
        v[self.f_index(j)] = -I
        return tuple(v)

    def conj_hodge_vector(self, j: int) -> Vector:
        return vec_conj(self.hodge_vector(j))

    def zero_weight_vector(self) -> Vector:
        if self.zero_index is None:
            raise ValueError("this frame has no middle basis vector")
        v = [ZERO] * self.dim
        v[self.zero_index] = ONE
        return tuple(v)

    def hodge_basis_matrix(self) -> Matrix:
        """Columns v_0, conj v_0, v_1, conj v_1, ..., (middle vector)."""
        if not hasattr(self, "_hodge_basis"):
            cols: list[Vector] = []
            for j in range(self.num_pairs):
                cols.append(self.hodge_vector(j))
                cols.append(self.conj_hodge_vector(j))
            if self.zero_index is not None:
                cols.append(self.zero_weight_vector())
            self._hodge_basis = Matrix.from_cols(cols)
        return self._hodge_basis

    def hodge_basis_inverse(self) -> Matrix:
        if not hasattr(self, "_hodge_basis_inv"):
            self._hodge_basis_inv = inverse(self.hodge_basis_matrix())
        return self._hodge_basis_inv

    def _build_polarization(self) -> Matrix:
        m = self.weight
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for j, p in enumerate(self.pair_types):
            e, f = self.e_index(j), self.f_index(j)
            if m % 2 == 1:
                # skew form: S(e_j, f_j) chosen so i^(2p-m) S(v, vbar) = 2
                sigma = Scalar(-1 if ((m + 1) // 2 - p + 1) % 2 else 1)
                rows[e][f] = sigma
                rows[f][e] = -sigma
            else:
                tau = Scalar(-1 if (m // 2 - p) % 2 else 1)
                rows[e][e] = tau
                rows[f][f] = tau
        if self.zero_index is not None:
            # S(w, w) = 2 keeps the same normalization on the middle line
            rows[self.zero_index][self.zero_index] = Scalar(2)
        return Matrix(rows)

    # -- reference Hodge structure -------------------------------------------

    def hodge_component(self, p: int) -> Subspace:
        """H^{p, weight-p} of the reference structure."""
        m = self.weight
        vectors: list[Vector] = []
        for j, pj in enumerate(self.pair_types):
            if pj == p:
                vectors.append(self.hodge_vector(j))
            if m - pj == p:
                vectors.append(self.conj_hodge_vector(j))
        if self.zero_index is not None and 2 * p == m:
            vectors.append(self.zero_weight_vector())
        return Subspace(vectors, self.dim)

    def reference_filtration(self) -> "Filtration":
        pieces = []
        for p in range(self.weight + 1):
            span: list[Vector] = []
            for r in range(p, self.weight + 1):
                span.extend(self.hodge_component(r).basis)
            pieces.append(Subspace(span, self.dim))
        return Filtration(self.weight, pieces)

    # -- compact torus --------------------------------------------------------

    def rotation_generator(self, j: int) -> Matrix:
        """The real rotation of the j-th block; these span a compact torus
        inside the isometry group."""
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        e, f = self.e_index(j), self.f_index(j)
        rows[f][e] = ONE
        rows[e][f] = -ONE
        return Matrix(rows)

    def cartan_generator(self, j: int) -> Matrix:
        """H_j = -i T_j; v_k has H_j-eigenvalue +delta_{jk}, conjugates -delta_{jk}."""
        return self.rotation_generator(j) * (-I)

    # -- isometry Lie algebra --------------------------------------------------

    def in_isometry_algebra(self, x: Matrix) -> bool:
        s = self.polarization
        return (x.transpose() @ s + s @ x).is_zero()

    def in_isometry_group(self, g: Matrix) -> bool:
        s = self.polarization
        return g.transpose() @ s @ g == s

    def isometry_algebra_basis(self) -> list[Matrix]:
        """Canonical rational basis of {X : S(Xu,v) + S(u,Xv) = 0}."""
        n = self.dim
        s = self.polarization
        op_cols = []
        for i in range(n):
            for j in range(n):
                eij = Matrix.zeros(n, n).rows
                eij = [list(r) for r in eij]
                eij[i][j] = ONE
                x = Matrix(eij)
                op_cols.append(flatten(x.transpose() @ s + s @ x))
        op = Matrix.from_cols(op_cols)
        return [unflatten(v, n, n) for v in kernel_basis(op)]

    def component_projector(self, p: int) -> Matrix:
        """Projector of H_C onto H^{p, weight-p} along the other pieces."""
        if p in self._projectors:
            return self._projectors[p]
        cols: list[Vector] = []
        flags: list[bool] = []
        for r in range(self.weight, -1, -1):
            for v in self.hodge_component(r).basis:
                cols.append(v)
                flags.append(r == p)
        basis = Matrix.from_cols(cols)
        diag = Matrix(
            [
                [ONE if (i == j and flags[i]) else ZERO for j in range(self.dim)]
                for i in range(self.dim)
            ]
        )
        proj = basis @ diag @ inverse(basis)
        self._projectors[p] = proj
        return proj

    def graded_piece(self, x: Matrix, r: int) -> Matrix:
        """Component of x mapping each H^{p,q} to H^{p+r, q-r}."""
        total = Matrix.zeros(self.dim, self.dim)
        for p in range(self.weight + 1):
            if 0 <= p + r <= self.weight:
                total = total + self.component_projector(p + r) @ x @ self.component_projector(p)
        return total

    def graded_dims(self) -> dict[int, int]:
        """Complex dimension of each graded piece of the isometry algebra."""
        basis = self.isometry_algebra_basis()
        dims: dict[int, int] = {}
        for r in range(-self.weight, self.weight + 1):
            pieces = [flatten(self.graded_piece(x, r)) for x in basis]
            d = Subspace(pieces, self.dim * self.dim).dim
            if d:
                dims[r] = d
        return dims

    def __repr__(self) -> str:
        return f"HodgeFrame(weight={self.weight}, hodge_numbers={self.hodge_numbers})"


class Filtration:
    """A decreasing filtration F^0 >= F^1 >= ... >= F^weight of H_C.

    Stored as one subspace per level; levels outside [0, weight] clamp to
    the full space and zero.  Nesting is not enforced at construction
    (membership tests report it), but ambient dimensions must agree.
    """

    __slots__ = ("weight", "pieces")

    def __init__(self, weight: int, pieces: Sequence[Subspace]) -> None:
        if len(pieces) != weight + 1:
            raise ValueError(f"need {weight + 1} filtration levels, got {len(pieces)}")
        ambient = pieces[0].ambient
        if any(p.ambient != ambient for p in pieces):
            raise ValueError("filtration levels live in different ambient spaces")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "pieces", tuple(pieces))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Filtration is immutable")

    @staticmethod
    def from_spans(weight: int, ambient: int, spans: Sequence[Sequence[Vector]]) -> "Filtration":
        return Filtration(weight, [Subspace(list(v), ambient) for v in spans])

    @property
    def ambient(self) -> int:
        return self.pieces[0].ambient

    def piece(self, p: int) -> Subspace:
        if p <= 0:
            return self.pieces[0]
        if p > self.weight:
            return Subspace.zero(self.ambient)
        return self.pieces[p]

    def is_nested(self) -> bool:
        return all(
            self.pieces[p].contains(self.pieces[p + 1]) for p in range(self.weight)
        )

    def conjugate(self) -> "Filtration":
        return Filtration(self.weight, [p.conjugate() for p in self.pieces])

    def apply(self, m: Matrix) -> "Filtration":
        return Filtration(self.weight, [p.image_under(m) for p in self.pieces])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Filtration):
            return self.weight == other.weight and self.pieces == other.pieces
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.weight, self.pieces))

    def __repr__(self) -> str:
        dims = ",".join(str(p.dim) for p in self.pieces)
        return f"Filtration(weight={self.weight}, dims=[{dims}])"


# -- membership and the Weil operator ----------------------------------------


def first_relation_holds(filt: Filtration, form: Matrix) -> bool:
    """S(F^p, F^{weight-p+1}) = 0 for all p."""
    m = filt.weight
    for p in range(0, m + 2):
        u = filt.piece(p)
        w = filt.piece(m - p + 1)
        for bu in u.basis:
            for bw in w.basis:
                if not form_value(form, bu, bw).is_zero():
                    return False
    return True


def in_compact_dual(filt: Filtration, frame: HodgeFrame) -> bool:
    """First bilinear relation on a flag with the frame's dimension
    profile; a wrong profile is not a membership failure but a type
    error and raises."""
    if filt.weight != frame.weight or filt.ambient != frame.dim:
        raise ValueError("not a point of the flag variety")
    if not filt.is_nested():
        raise ValueError("not a point of the flag variety")
    expected = 0
    for p in range(frame.weight, -1, -1):
        expected += frame.hodge_numbers[p]
        if filt.piece(p).dim != expected:
            raise ValueError("not a point of the flag variety")
    return first_relation_holds(filt, frame.polarization)


def hodge_decomposition(filt: Filtration) -> Optional[dict[tuple[int, int], Subspace]]:
    """Components H^{p,q} = F^p intersect conj(F^q); None unless they span."""
    m = filt.weight
    conj = filt.conjugate()
    comps: dict[tuple[int, int], Subspace] = {}
    total = Subspace.zero(filt.ambient)
    count = 0
    for p in range(m + 1):
        piece = filt.piece(p).intersect(conj.piece(m - p))
        if piece.dim:
            comps[(p, m - p)] = piece
        count += piece.dim
        total = total.sum_with(piece)
    if count != filt.ambient or total.dim != filt.ambient:
        return None
    return comps


def weil_operator(filt: Filtration) -> Matrix:
    """Acts as i^{p-q} on H^{p,q}; raises when the filtration does not
    induce a Hodge decomposition."""
    comps = hodge_decomposition(filt)
    if comps is None:
        raise ValueError("filtration not a real Hodge decomposition")
    cols: list[Vector] = []
    scale: list[Scalar] = []
    for (p, q), piece in sorted(comps.items(), reverse=True):
        for v in piece.basis:
            cols.append(v)
            scale.append(_i_power(p - q))
    basis = Matrix.from_cols(cols)
    diag = Matrix(
        [
            [scale[i] if i == j else ZERO for j in range(len(cols))]
            for i in range(len(cols))
        ]
    )
    return basis @ diag @ inverse(basis)


def polarization_positive(filt: Filtration, form: Matrix) -> bool:
    """Positivity of i^{p-q} S(v, conj v) on every Hodge component."""
    comps = hodge_decomposition(filt)
    if comps is None:
        return False
    for (p, q), piece in comps.items():
        basis = list(piece.basis)
        gram = Matrix(
            [
                [_i_power(p - q) * form_value(form, u, vec_conj(v)) for v in basis]
                for u in basis
            ]
        )
        if not hermitian_positive(gram):
            return False
    return True


def in_period_domain(filt: Filtration, frame: HodgeFrame) -> bool:
    """Membership in the open domain of polarized structures.

    Raises if the point is not even in the compact dual; returns False
    when the filtration fails to give a real Hodge decomposition or
    positivity fails on some component.
    """
    if not in_compact_dual(filt, frame):
        raise ValueError("not a point of the compact dual")
    return polarization_positive(filt, frame.polarization)


def is_integral(m: Matrix) -> bool:
    """Every entry a rational integer."""
    return all(
        x.is_rational() and x.as_fraction().denominator == 1
        for row in m.rows
        for x in row
    )


def domain_dimensions(frame: HodgeFrame) -> dict[str, int]:
    """Dimension bookkeeping for the domain and its compact dual.

    The complex dimension of the flag variety is the sum of the
    negative graded pieces of the isometry algebra; the open domain is
    an open subset, so it has the same complex dimension.  The real
    dimension is dim g_R minus the dimension of the isotropy group of
    the basepoint.
    """
    dims = frame.graded_dims()
    total = sum(dims.values())
    negative = sum(d for r, d in dims.items() if r < 0)
    isotropy = dims.get(0, 0)
    return {
        "dim_check_D_complex": negative,
        "dim_D_complex": negative,
        "dim_D_real": total - isotropy,
        "dim_g_real": total,
        "dim_v": isotropy,
    }
