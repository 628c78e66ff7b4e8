"""Root and weight theory of the isometry algebra in a Hodge frame.

The compact torus generators of a frame form a Cartan subalgebra of the
complexified isometry algebra.  Roots are integer coefficient tuples on
the basis dual to those generators.  This module enumerates them, builds
exactly normalized root vectors, packages the distinguished sl2 for each
noncompact root together with its Cayley element, constructs a maximal
strongly orthogonal set of negative-degree noncompact roots, and computes
the restricted root system of the resulting maximal split torus over a
chosen base field (Q or R), with root spaces obtained both by Cayley
transport and by direct eigenspace splitting.

Sign conventions, fixed once and verified by the test suite: a root
vector X and its conjugate X' = conj(X) satisfy [ [X, X'], X ] = 2 X when
the root has odd degree (noncompact) and -2 X when even (compact).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .domain import HodgeFrame
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    bracket,
    flatten,
    inverse,
    kernel_basis,
    nilpotent_exp,
    solve_vector,
    unflatten,
)
from .scalars import HALF, I, ONE, SQRT2, ZERO, Scalar

Root = tuple[int, ...]


class NoRationalCartanError(ValueError):
    pass


# -- enumeration --------------------------------------------------------------


def split_rank(frame: HodgeFrame) -> int:
    """Real rank of the isometry group, straight from the Hodge numbers."""
    m = frame.weight
    if m % 2 == 1:
        return frame.num_pairs
    n = m // 2
    a = sum(h for p, h in enumerate(frame.hodge_numbers) if (p - n) % 2 == 0)
    return min(a, frame.dim - a)


def negative_side_roots(frame: HodgeFrame) -> list[Root]:
    """One representative per root pair: negative degree, or degree zero
    with lexicographically smaller coefficients."""
    k = frame.num_pairs
    out: list[Root] = []
    for d in range(k):
        for e in range(k):
            if d == e:
                continue
            r = [0] * k
            r[d], r[e] = -1, 1
            root = tuple(r)
            deg = root_degree(frame, root)
            if deg < 0 or (deg == 0 and d < e):
                out.append(root)
    for d in range(k):
        for e in range(d + 1, k):
            r = [0] * k
            r[d] = r[e] = -1
            out.append(tuple(r))
    if frame.weight % 2 == 1:
        for e in range(k):
            r = [0] * k
            r[e] = -2
            out.append(tuple(r))
    elif frame.zero_index is not None:
        for d in range(k):
            r = [0] * k
            r[d] = -1
            out.append(tuple(r))
    return sorted(out)


def all_roots(frame: HodgeFrame) -> list[Root]:
    out: set[Root] = set()
    for r in negative_side_roots(frame):
        out.add(r)
        out.add(tuple(-a for a in r))
    return sorted(out)


def root_degree(frame: HodgeFrame, root: Root) -> int:
    """The grading level r with the root space inside g^{r,-r}; equals
    sum of a_j (p_j - weight/2) over the coefficients a_j."""
    total = Fraction(0)
    for j, a in enumerate(root):
        total += Fraction(a) * (Fraction(frame.pair_types[j]) - Fraction(frame.weight, 2))
    if total.denominator != 1:
        raise ValueError(f"{root} is not a root of this frame")
    return int(total)


def is_compact_root(frame: HodgeFrame, root: Root) -> bool:
    return root_degree(frame, root) % 2 == 0


def is_negative_side(frame: HodgeFrame, root: Root) -> bool:
    deg = root_degree(frame, root)
    return deg < 0 or (deg == 0 and root < tuple(-a for a in root))


# -- root vectors -------------------------------------------------------------


def _action_matrix(frame: HodgeFrame, action: dict[int, list[tuple[int, Scalar]]]) -> Matrix:
    """Matrix acting on the Hodge basis (v_0, conj v_0, ..., middle) by the
    given column -> [(row, coefficient)] images."""
    n = frame.dim
    rows = [[ZERO] * n for _ in range(n)]
    for src, images in action.items():
        for dst, coeff in images:
            rows[dst][src] = coeff
    return frame.hodge_basis_matrix() @ Matrix(rows) @ frame.hodge_basis_inverse()


def _sign(k: int) -> Scalar:
    return Scalar(-1 if k % 2 else 1)


def root_vector(frame: HodgeFrame, root: Root) -> Matrix:
    """Exactly normalized root vector; conj(X_root) = X_{-root} holds for
    every root, and [[X, conj X], X] = (2 or -2) X by degree parity."""
    if len(root) != frame.num_pairs:
        raise ValueError("weights not admissible for this construction")
    if not is_negative_side(frame, root):
        return root_vector(frame, tuple(-a for a in root)).conj()
    m = frame.weight
    types = frame.pair_types
    vi = lambda j: 2 * j
    ci = lambda j: 2 * j + 1
    neg = [j for j, a in enumerate(root) if a < 0]
    pos = [j for j, a in enumerate(root) if a > 0]
    if len(neg) == 1 and len(pos) == 1 and root[neg[0]] == -1 and root[pos[0]] == 1:
        d, e = neg[0], pos[0]
        c = _sign(types[e] - types[d] + 1) * I
        return _action_matrix(frame, {vi(d): [(vi(e), c)], ci(e): [(ci(d), I)]})
    if len(neg) == 2 and not pos and root[neg[0]] == root[neg[1]] == -1:
        d, e = neg
        c = I
        cp = -c * _sign(m + types[d] - types[e])
        return _action_matrix(frame, {vi(d): [(ci(e), c)], vi(e): [(ci(d), cp)]})
    if len(neg) == 1 and not pos and root[neg[0]] == -2:
        if m % 2 == 0:
            raise ValueError("weights not admissible for this construction")
        e = neg[0]
        return _action_matrix(frame, {vi(e): [(ci(e), -I)]})
    if len(neg) == 1 and not pos and root[neg[0]] == -1:
        if frame.zero_index is None:
            raise ValueError("weights not admissible for this construction")
        d = neg[0]
        w = frame.dim - 1
        # the sqrt2 scale is forced: without it the coroot pairing is 1
        c = -I * SQRT2
        cp = -c * _sign(types[d] - m // 2)
        return _action_matrix(frame, {vi(d): [(w, c)], w: [(ci(d), cp)]})
    raise ValueError("weights not admissible for this construction")


def coroot(frame: HodgeFrame, root: Root) -> Matrix:
    """[X_root, X_{-root}]; lies in the Cartan, pairs to +-2 with root."""
    x = root_vector(frame, root)
    return bracket(x, x.conj())


def cartan_coefficients(frame: HodgeFrame, t: Matrix) -> tuple[Scalar, ...]:
    """Coefficients of an element of the Cartan on the torus generators;
    raises if the element is not in the Cartan."""
    coeffs = tuple(I * t[frame.f_index(j), frame.e_index(j)] for j in range(frame.num_pairs))
    rebuilt = Matrix.zeros(frame.dim, frame.dim)
    for j, c in enumerate(coeffs):
        rebuilt = rebuilt + frame.cartan_generator(j) * c
    if rebuilt != t:
        raise ValueError("matrix is not in the chosen Cartan subalgebra")
    return coeffs


def root_value(frame: HodgeFrame, root: Root, t: Matrix) -> Scalar:
    """The root functional evaluated on a Cartan element."""
    coeffs = cartan_coefficients(frame, t)
    total = ZERO
    for a, c in zip(root, coeffs):
        total = total + Scalar(a) * c
    return total


# -- honest weight decomposition ----------------------------------------------


def _split_by_operator(
    space: Subspace,
    op: Callable[[Matrix], Matrix],
    eigenvalues: Sequence[Scalar],
    n: int,
) -> dict[Scalar, Subspace]:
    """Split a subspace of flattened n x n matrices under a linear operator
    with the given candidate eigenvalues; raises if they do not exhaust it."""
    if space.dim == 0:
        return {}
    cols = []
    for b in space.basis:
        image = flatten(op(unflatten(b, n, n)))
        coords = space.coordinates_of(image)
        if coords is None:
            raise ValueError("operator does not preserve the subspace")
        cols.append(coords)
    a = Matrix.from_cols(cols)
    pieces: dict[Scalar, Subspace] = {}
    total = 0
    for lam in eigenvalues:
        ker = kernel_basis(a - Matrix.identity(space.dim) * lam)
        if not ker:
            continue
        vectors = []
        for coeffs in ker:
            v = [ZERO] * space.ambient
            for c, b in zip(coeffs, space.basis):
                if not c.is_zero():
                    v = [x + c * y for x, y in zip(v, b)]
            vectors.append(tuple(v))
        piece = Subspace(vectors, space.ambient)
        pieces[lam] = piece
        total += piece.dim
    if total != space.dim:
        raise ValueError("candidate eigenvalues do not split the space")
    return pieces


def weight_decomposition(frame: HodgeFrame) -> dict[Root, Subspace]:
    """Simultaneous eigenspaces of the torus generators acting on the
    complexified isometry algebra; keys are the weight tuples (the zero
    tuple keyed piece is the Cartan itself).  Subspaces are flattened."""
    n = frame.dim
    basis = [flatten(x) for x in frame.isometry_algebra_basis()]
    state: dict[tuple[int, ...], Subspace] = {(): Subspace(basis, n * n)}
    candidates = [Scalar(v) for v in (-2, -1, 0, 1, 2)]
    for j in range(frame.num_pairs):
        h = frame.cartan_generator(j)
        op = lambda x: bracket(h, x)
        new_state: dict[tuple[int, ...], Subspace] = {}
        for prefix, space in state.items():
            for lam, piece in _split_by_operator(space, op, candidates, n).items():
                new_state[prefix + (int(lam.as_fraction()),)] = piece
        state = new_state
    return {k: v for k, v in state.items()}


# -- sl2 packages and Cayley elements -----------------------------------------


@dataclass(frozen=True)
class SL2Package:
    """The distinguished sl2 through a noncompact root, in both pictures.

    x_plus, x_minus, coroot span the eigenbasis picture for the compact
    torus; split, n_plus, n_minus the one for the real split torus.  The
    cayley element conjugates one to the other inside the isometry group
    of the complexification."""

    root: Root
    x_plus: Matrix
    x_minus: Matrix
    coroot: Matrix
    split: Matrix
    n_plus: Matrix
    n_minus: Matrix
    cayley: Matrix
    cayley_inverse: Matrix


def sl2_package(frame: HodgeFrame, root: Root) -> SL2Package:
    deg = root_degree(frame, root)
    if deg % 2 == 0:
        raise ValueError("compact root has no real sl(2) of this form")
    x_plus = root_vector(frame, root)
    x_minus = x_plus.conj()
    z = bracket(x_plus, x_minus)
    y = (x_plus - x_minus) * (-I)
    n_plus = z * (-I * HALF) + (x_plus + x_minus) * HALF
    n_minus = z * (I * HALF) + (x_plus + x_minus) * HALF
    u = I * (ONE - SQRT2)
    v = -I * SQRT2 * HALF
    c = nilpotent_exp(n_minus * u) @ nilpotent_exp(n_plus * v) @ nilpotent_exp(n_minus * u)
    return SL2Package(
        root=root,
        x_plus=x_plus,
        x_minus=x_minus,
        coroot=z,
        split=y,
        n_plus=n_plus,
        n_minus=n_minus,
        cayley=c,
        cayley_inverse=inverse(c),
    )


def strongly_orthogonal_roots(frame: HodgeFrame) -> tuple[Root, ...]:
    """A maximal set of pairwise strongly orthogonal noncompact roots of
    negative degree, of size split_rank(frame).

    Odd weight: all doubled roots.  Even weight: pair blocks across the
    two parity classes of p in order of decreasing p, two roots per
    matched pair; one middle root if the off-parity class has surplus and
    the frame has a middle vector."""
    k = frame.num_pairs
    m = frame.weight
    out: list[Root] = []
    if m % 2 == 1:
        for e in range(k):
            r = [0] * k
            r[e] = -2
            out.append(tuple(r))
        return tuple(out)
    n = m // 2
    same = [j for j in range(k) if (frame.pair_types[j] - n) % 2 == 0]
    cross = [j for j in range(k) if (frame.pair_types[j] - n) % 2 == 1]
    for d, e in zip(cross, same):
        hi, lo = (d, e) if frame.pair_types[d] > frame.pair_types[e] else (e, d)
        r1 = [0] * k
        r1[hi], r1[lo] = -1, 1
        r2 = [0] * k
        r2[hi] = r2[lo] = -1
        out.extend([tuple(r1), tuple(r2)])
    if len(cross) > len(same) and frame.zero_index is not None:
        r = [0] * k
        r[cross[len(same)]] = -1
        out.append(tuple(r))
    return tuple(out)


def is_strongly_orthogonal(frame: HodgeFrame, a: Root, b: Root) -> bool:
    if a == b or a == tuple(-x for x in b):
        return False
    roots = set(all_roots(frame))
    s = tuple(x + y for x, y in zip(a, b))
    d = tuple(x - y for x, y in zip(a, b))
    return s not in roots and d not in roots


# -- restricted roots ----------------------------------------------------------


@dataclass(frozen=True)
class RestrictedRoot:
    """One restricted root: coordinates on the basis dual to the split
    generators, the roots restricting to it, the grading levels of those
    roots, and (multiplicity one only) a rational generator of its root
    space aligned with the Cayley transport."""

    coords: tuple[int, ...]
    preimages: tuple[Root, ...]
    degrees: tuple[int, ...]
    vector: Optional[Matrix]

    @property
    def multiplicity(self) -> int:
        return len(self.preimages)


def _lex_positive(values: Sequence) -> bool:
    for x in values:
        if x != 0:
            return x > 0
    return False


def _rational_real(m: Matrix) -> bool:
    return all(x.is_rational() for row in m.rows for x in row)


def _real_entries(m: Matrix) -> bool:
    return all(x.is_real() for row in m.rows for x in row)


def _leading_normalize(m: Matrix) -> Matrix:
    for row in m.rows:
        for x in row:
            if not x.is_zero():
                return m * x.inverse()
    raise ValueError("zero matrix has no leading entry")


class RestrictedRoots:
    """Restricted root data of the maximal split torus spanned by the
    split generators of the strongly orthogonal set, over base field Q
    (default) or R."""

    def __init__(self, frame: HodgeFrame, field: str = "Q") -> None:
        if field not in ("Q", "R"):
            raise ValueError("base field tag must be 'Q' or 'R'")
        self.frame = frame
        self.field = field
        self.sigma = strongly_orthogonal_roots(frame)
        self.packages = tuple(sl2_package(frame, g) for g in self.sigma)
        if field == "Q":
            for pkg in self.packages:
                if not _rational_real(pkg.split):
                    raise NoRationalCartanError(
                        "no rational Cartan in chosen position"
                    )
        n = frame.dim
        c = Matrix.identity(n)
        for pkg in self.packages:
            c = c @ pkg.cayley
        self.cayley = c
        self.cayley_inverse = inverse(c)
        self.rank = len(self.sigma)
        self._build_table()
        self._build_split_spaces()

    def _build_table(self) -> None:
        frame = self.frame
        by_coords: dict[tuple[int, ...], list[Root]] = {}
        for beta in all_roots(frame):
            res = []
            for pkg in self.packages:
                val = root_value(frame, beta, pkg.coroot)
                f = val.as_fraction()
                if f.denominator != 1:
                    raise ValueError("restricted pairing is not integral")
                res.append(int(f))
            coords = tuple(res)
            if any(coords):
                by_coords.setdefault(coords, []).append(beta)
        table: dict[tuple[int, ...], RestrictedRoot] = {}
        wanted = _rational_real if self.field == "Q" else _real_entries
        for coords, betas in sorted(by_coords.items()):
            betas = tuple(sorted(betas))
            degrees = tuple(sorted({root_degree(frame, b) for b in betas}))
            vector: Optional[Matrix] = None
            if len(betas) == 1:
                moved = self.cayley_inverse @ root_vector(frame, betas[0]) @ self.cayley
                if not wanted(moved):
                    moved = _leading_normalize(moved)
                if not wanted(moved):
                    raise ValueError("restricted root space has no point over the base field")
                vector = moved
            table[coords] = RestrictedRoot(
                coords=coords, preimages=betas, degrees=degrees, vector=vector
            )
        self.table = table

    def _build_split_spaces(self) -> None:
        frame = self.frame
        n = frame.dim
        basis = [flatten(x) for x in frame.isometry_algebra_basis()]
        state: dict[tuple[int, ...], Subspace] = {(): Subspace(basis, n * n)}
        candidates = [Scalar(v) for v in (-2, -1, 0, 1, 2)]
        for pkg in self.packages:
            y = pkg.split
            op = lambda x: bracket(y, x)
            new_state: dict[tuple[int, ...], Subspace] = {}
            for prefix, space in state.items():
                for lam, piece in _split_by_operator(space, op, candidates, n).items():
                    new_state[prefix + (int(lam.as_fraction()),)] = piece
            state = new_state
        zero = tuple([0] * self.rank)
        self.centralizer_space = state.get(zero, Subspace.zero(n * n))
        self.root_spaces = {k: v for k, v in state.items() if any(k)}

    # -- queries ---------------------------------------------------------

    def restricted_roots(self) -> list[tuple[int, ...]]:
        return sorted(self.table)

    def of_degree(self, level: int) -> list[tuple[int, ...]]:
        """Restricted roots all of whose preimages live in grading level."""
        return [k for k, e in sorted(self.table.items()) if e.degrees == (level,)]

    def split_generators(self) -> list[Matrix]:
        return [pkg.split for pkg in self.packages]

    def _order_key(
        self, coords: tuple[int, ...], y_coords: Optional[Sequence[Fraction]]
    ) -> tuple:
        # roots negative on the supplied torus element come first; ties
        # and the default ordering fall back to lexicographic positivity
        if y_coords is None:
            return coords
        val = sum(Fraction(a) * Fraction(c) for a, c in zip(coords, y_coords))
        return (-val,) + coords

    def positive_roots(
        self, y_coords: Optional[Sequence[Fraction]] = None
    ) -> list[tuple[int, ...]]:
        """Half system under the stored ordering.  With no argument the
        order is lexicographic; given coordinates of a torus element Y on
        the split generators, a root is positive when it is negative on Y,
        ties resolved lexicographically."""
        out = []
        for a in self.restricted_roots():
            if _lex_positive(self._order_key(a, y_coords)):
                out.append(a)
        return out

    def simple_roots(
        self, y_coords: Optional[Sequence[Fraction]] = None
    ) -> list[tuple[int, ...]]:
        """Positive roots not expressible as a sum of two positive roots."""
        pos = self.positive_roots(y_coords)
        pos_set = set(pos)
        out = []
        for a in pos:
            decomposable = any(
                b != a and tuple(x - y for x, y in zip(a, b)) in pos_set
                for b in pos_set
            )
            if not decomposable:
                out.append(a)
        return out

    def decompose(self, x: Matrix) -> tuple[Matrix, dict[tuple[int, ...], Matrix]]:
        """Write a rational element of the isometry algebra as its
        centralizer part plus one component per restricted root."""
        frame = self.frame
        n = frame.dim
        if not frame.in_isometry_algebra(x):
            raise ValueError("matrix is not in the isometry algebra")
        order = [None] + self.restricted_roots()
        spaces = [self.centralizer_space] + [self.root_spaces[k] for k in order[1:]]
        all_vectors: list[Vector] = []
        owners: list[int] = []
        for idx, space in enumerate(spaces):
            for b in space.basis:
                all_vectors.append(b)
                owners.append(idx)
        big = Subspace(all_vectors, n * n)
        if big.dim != len(all_vectors):
            raise AssertionError("eigenspaces overlap")
        coords = Matrix.from_cols(all_vectors)
        sol = solve_vector(coords, flatten(x))
        if sol is None:
            raise ValueError("element does not lie in the split eigenspace sum")
        parts: dict[int, list[tuple[Scalar, Vector]]] = {}
        for coeff, vec, owner in zip(sol, all_vectors, owners):
            if not coeff.is_zero():
                parts.setdefault(owner, []).append((coeff, vec))
        def rebuild(terms: list[tuple[Scalar, Vector]]) -> Matrix:
            total = [ZERO] * (n * n)
            for coeff, vec in terms:
                total = [t + coeff * v for t, v in zip(total, vec)]
            return unflatten(tuple(total), n, n)

        zero_part = rebuild(parts.get(0, []))
        components = {
            order[idx]: rebuild(terms) for idx, terms in parts.items() if idx != 0
        }
        return zero_part, components


def restrict_roots(frame: HodgeFrame, field: str = "Q") -> RestrictedRoots:
    return RestrictedRoots(frame, field)
