import itertools
from fractions import Fraction
from functools import lru_cache

import pytest

from hodgerbs.domain import HodgeFrame, weil_operator
from hodgerbs.linalg import (
    Matrix,
    Subspace,
    bracket,
    flatten,
    form_value,
    kernel_subspace,
    nilpotent_exp,
    unflatten,
)
from hodgerbs.nilpotents import (
    SL2Triple,
    _ad_matrix,
    _split_coordinates,
    canonical_parabolic,
    horizontality_check,
    jm_triple,
    monodromy_log,
    sl2_decompose_Y,
    weight_filtration,
    weight_filtration_by_induction,
    weight_filtration_by_powers,
    weighted_dynkin,
)
from hodgerbs.roots import restrict_roots
from hodgerbs.scalars import ONE, ZERO, Scalar


@lru_cache(maxsize=None)
def rr_of(m, h, field="Q"):
    return restrict_roots(HodgeFrame(m, h), field)


def class_vector(rr, coords):
    v = rr.table[coords].vector
    assert v is not None
    return v


def build(rr, terms):
    n = Matrix.zeros(rr.frame.dim, rr.frame.dim)
    for coords, coeff in terms:
        n = n + class_vector(rr, coords) * coeff
    return n


def algebra_subspace(frame):
    d = frame.dim
    return Subspace([flatten(b) for b in frame.isometry_algebra_basis()], d * d)


def conjugated_triple(t):
    """A second triple through the same nilpotent: conjugate by exp(n),
    which fixes n but moves the semisimple member."""
    u = nilpotent_exp(t.lowering)
    u_inv = nilpotent_exp(t.lowering * -1)
    return SL2Triple(
        lowering=t.lowering,
        split=u @ t.split @ u_inv,
        raising=u @ t.raising @ u_inv,
    )


# -- monodromy logarithms -------------------------------------------------------


def test_monodromy_unipotent_matrix():
    gamma = Matrix([[1, 1], [0, 1]])
    m = monodromy_log(gamma)
    assert m.order == 1
    assert m.log == Matrix([[0, 1], [0, 0]])


def test_monodromy_torsion_matrix():
    m = monodromy_log(Matrix([[-1, 0], [0, -1]]))
    assert m.order == 2
    assert m.log.is_zero()


def test_monodromy_order_six_rotation():
    gamma = Matrix([[0, -1], [1, 1]])
    m = monodromy_log(gamma)
    assert m.order == 6
    assert m.log.is_zero()
    assert gamma ** 6 == Matrix.identity(2)
    # no smaller power is unipotent
    ident = Matrix.identity(2)
    for j in range(1, 6):
        assert not ((gamma ** j - ident) ** 2).is_zero()


def test_monodromy_quasi_unipotent_with_log():
    gamma = Matrix([[-1, -1], [0, -1]])
    m = monodromy_log(gamma)
    assert m.order == 2
    assert m.log == Matrix([[0, 1], [0, 0]])
    assert gamma ** 2 == Matrix([[1, 2], [0, 1]])
    assert nilpotent_exp(m.log, Scalar(2)) == gamma ** 2
    assert bracket(gamma, m.log).is_zero()


def test_monodromy_log_recovers_algebra_nilpotent():
    rr = rr_of(1, (2, 2))
    n = build(rr, (((0, 2), 1), ((1, -1), 1)))
    m = monodromy_log(nilpotent_exp(n))
    assert m.order == 1
    assert m.log == n


def test_monodromy_rejects_non_quasi_unipotent():
    with pytest.raises(ValueError, match="monodromy not quasi-unipotent"):
        monodromy_log(Matrix([[2, 0], [0, 1]]))
    with pytest.raises(ValueError, match="monodromy not quasi-unipotent"):
        monodromy_log(Matrix([[2, 1], [1, 1]]))


# -- Jacobson-Morozov triples ---------------------------------------------------


def assert_triple_relations(t):
    assert bracket(t.split, t.lowering) == t.lowering * -2
    assert bracket(t.split, t.raising) == t.raising * 2
    assert bracket(t.raising, t.lowering) == t.split


def test_jm_recovers_model_triple():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    t = jm_triple(rr.frame, pkg.n_minus, rr)
    assert t.split == pkg.split
    assert t.raising == pkg.n_plus
    assert_triple_relations(t)


@pytest.mark.parametrize(
    "case",
    [(1, (1, 1), "Q"), (1, (2, 2), "Q"), (2, (1, 2, 1), "Q"), (3, (1, 1, 1, 1), "Q"), (2, (1, 1, 1), "R")],
    ids=lambda c: f"{c[0]};{','.join(map(str, c[1]))};{c[2]}",
)
def test_jm_aligns_with_every_package(case):
    rr = rr_of(*case)
    for pkg in rr.packages:
        t = jm_triple(rr.frame, pkg.n_minus, rr)
        assert t.split == pkg.split
        assert t.raising == pkg.n_plus


def test_jm_regular_nilpotent_semisimple_member():
    rr = rr_of(1, (2, 2))
    n = build(rr, (((0, 2), 1), ((1, -1), 1)))
    t = jm_triple(rr.frame, n, rr)
    assert_triple_relations(t)
    y1, y2 = rr.split_generators()
    assert t.split == y1 * -3 + y2 * -1
    assert _split_coordinates(rr, t.split) == (Fraction(-3), Fraction(-1))


def test_jm_short_and_long_nilpotents():
    rr = rr_of(1, (2, 2))
    y1, y2 = rr.split_generators()
    t_short = jm_triple(rr.frame, class_vector(rr, (1, 1)), rr)
    assert t_short.split == (y1 + y2) * -1
    t_long = jm_triple(rr.frame, rr.packages[0].n_minus, rr)
    assert t_long.split == y1


def test_jm_general_position_nilpotent():
    # conjugate a package nilpotent out of the root-vector configuration
    rr = rr_of(1, (2, 2))
    g = nilpotent_exp(class_vector(rr, (-2, 0)))
    g_inv = nilpotent_exp(class_vector(rr, (-2, 0)) * -1)
    n = g @ rr.packages[1].n_minus @ g_inv
    t = jm_triple(rr.frame, n, rr)
    assert_triple_relations(t)
    assert algebra_subspace(rr.frame).contains_vector(flatten(t.split))


def test_jm_triple_is_not_unique_but_filtration_is():
    rr = rr_of(1, (2, 2))
    n = build(rr, (((0, 2), 1), ((1, -1), 1)))
    t = jm_triple(rr.frame, n, rr)
    t2 = conjugated_triple(t)
    assert t2.split != t.split
    assert_triple_relations(t2)
    for space in ("H", "g"):
        w1 = weight_filtration(rr.frame, n, space, triple=t)
        w2 = weight_filtration(rr.frame, n, space, triple=t2)
        assert w1 == w2


def test_jm_rejects_bad_input():
    rr = rr_of(1, (1, 1))
    d = rr.frame.dim
    with pytest.raises(ValueError, match="matrix not in the isometry algebra"):
        jm_triple(rr.frame, Matrix.identity(d), rr)
    with pytest.raises(ValueError, match="zero nilpotent has no triple"):
        jm_triple(rr.frame, Matrix.zeros(d, d), rr)
    with pytest.raises(ValueError, match="matrix not nilpotent"):
        jm_triple(rr.frame, rr.packages[0].split, rr)


# -- weight filtrations ----------------------------------------------------------

# (m, h, field), nilpotent as class-vector combination, graded dims on H, on g
FILTRATION_CASES = [
    ("sp2", (1, (1, 1), "Q"), (((-2,), 1),),
     {0: 1, 2: 1}, {-2: 1, 0: 1, 2: 1}),
    ("sp4-regular", (1, (2, 2), "Q"), (((0, 2), 1), ((1, -1), 1)),
     {-2: 1, 0: 1, 2: 1, 4: 1}, {-6: 1, -4: 1, -2: 2, 0: 2, 2: 2, 4: 1, 6: 1}),
    ("sp4-short", (1, (2, 2), "Q"), (((1, 1), 1),),
     {0: 2, 2: 2}, {-2: 3, 0: 4, 2: 3}),
    ("sp4-long", (1, (2, 2), "Q"), (((-2, 0), 1),),
     {0: 1, 1: 2, 2: 1}, {-2: 1, -1: 2, 0: 4, 1: 2, 2: 1}),
    ("wt3-regular", (3, (1, 1, 1, 1), "Q"), (((0, -2), 1), ((-1, 1), 1)),
     {0: 1, 2: 1, 4: 1, 6: 1}, {-6: 1, -4: 1, -2: 2, 0: 2, 2: 2, 4: 1, 6: 1}),
    ("so22", (2, (1, 2, 1), "Q"), (((-2, 0), 1),),
     {1: 2, 3: 2}, {-2: 1, 0: 4, 2: 1}),
    ("so12-real", (2, (1, 1, 1), "R"), (((-2,), 1),),
     {0: 1, 2: 1, 4: 1}, {-2: 1, 0: 1, 2: 1}),
]


@lru_cache(maxsize=None)
def filtration_data(label):
    _, frame_args, terms, dims_h, dims_g = next(
        c for c in FILTRATION_CASES if c[0] == label
    )
    rr = rr_of(*frame_args)
    n = build(rr, terms)
    t = jm_triple(rr.frame, n, rr)
    w_h = weight_filtration(rr.frame, n, "H", triple=t)
    w_g = weight_filtration(rr.frame, n, "g", triple=t)
    return rr, n, t, w_h, w_g, dims_h, dims_g


@pytest.fixture(params=[c[0] for c in FILTRATION_CASES])
def filtration_case(request):
    return filtration_data(request.param)


def test_weight_filtration_graded_dimensions(filtration_case):
    rr, n, t, w_h, w_g, dims_h, dims_g = filtration_case
    assert w_h.center == rr.frame.weight
    assert w_h.graded_dims() == dims_h
    assert w_g.center == 0
    assert w_g.graded_dims() == dims_g


def test_weight_filtration_routes_agree(filtration_case):
    rr, n, t, w_h, w_g, _, _ = filtration_case
    frame = rr.frame
    assert weight_filtration_by_powers(n, frame.weight) == w_h
    assert weight_filtration_by_induction(n, frame.weight) == w_h
    g = algebra_subspace(frame)
    ad_n = _ad_matrix(n)
    assert weight_filtration_by_powers(ad_n, 0, within=g) == w_g
    assert weight_filtration_by_induction(ad_n, 0, within=g) == w_g


def test_weight_filtration_independent_of_triple(filtration_case):
    rr, n, t, w_h, w_g, _, _ = filtration_case
    t2 = conjugated_triple(t)
    assert t2.split != t.split
    assert weight_filtration(rr.frame, n, "H", triple=t2) == w_h
    assert weight_filtration(rr.frame, n, "g", triple=t2) == w_g


def test_weight_filtration_rank_one_model():
    rr = rr_of(1, (1, 1))
    n = rr.packages[0].n_minus
    w = weight_filtration(rr.frame, n, "H", rr=rr)
    # W_0 = W_1 = span{e_0} = ker n = im n, W_2 everything
    assert w.piece(0) == Subspace([(ONE, ZERO)], 2)
    assert w.piece(1) == w.piece(0)
    assert w.piece(2) == Subspace.full(2)
    assert w.piece(-1).dim == 0


def test_weight_filtration_on_algebra_model():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    w = weight_filtration(rr.frame, pkg.n_minus, "g", rr=rr)
    assert w.piece(-2) == Subspace([flatten(pkg.n_minus)], 4)
    assert w.piece(0) == Subspace([flatten(pkg.n_minus), flatten(pkg.split)], 4)
    assert w.piece(0).contains_vector(flatten(pkg.split))
    assert w.piece(2).dim == 3


def test_weight_filtration_shifts_with_center():
    rr = rr_of(1, (1, 1))
    n = rr.packages[0].n_minus
    w0 = weight_filtration(rr.frame, n, "H", c=0, rr=rr)
    w1 = weight_filtration(rr.frame, n, "H", rr=rr)
    assert w0.graded_dims() == {-1: 1, 1: 1}
    assert all(w0.piece(k) == w1.piece(k + 1) for k in range(-3, 3))


def test_weight_filtration_zero_nilpotent():
    frame = HodgeFrame(1, (1, 1))
    w = weight_filtration(frame, Matrix.zeros(2, 2), "H")
    assert w.graded_dims() == {1: 2}
    assert w.piece(1) == Subspace.full(2)
    assert w.piece(0).dim == 0


def test_weight_filtration_conjugation_covariance():
    rr = rr_of(1, (2, 2))
    n0 = rr.packages[1].n_minus
    a = class_vector(rr, (-2, 0))
    g = nilpotent_exp(a)
    g_inv = nilpotent_exp(a * -1)
    base = weight_filtration(rr.frame, n0, "H", rr=rr)
    moved = weight_filtration(rr.frame, g @ n0 @ g_inv, "H", rr=rr)
    for k in range(base.lowest - 1, base.highest + 1):
        assert moved.piece(k) == base.piece(k).image_under(g)


def test_weight_filtration_pairing_vanishes_on_low_levels():
    # independent re-check of the invariant the production route asserts
    rr = rr_of(1, (2, 2))
    n = build(rr, (((0, 2), 1), ((1, -1), 1)))
    w = weight_filtration(rr.frame, n, "H", rr=rr)
    s = rr.frame.polarization
    c = w.center
    for k1 in w.levels():
        for k2 in w.levels():
            if (k1 - c) + (k2 - c) < 0:
                for u in w.piece(k1).basis:
                    for v in w.piece(k2).basis:
                        assert form_value(s, u, v).is_zero()


def test_weight_filtration_rejects_bad_input():
    rr = rr_of(1, (1, 1))
    frame = rr.frame
    n = rr.packages[0].n_minus
    with pytest.raises(ValueError, match="space tag must be"):
        weight_filtration(frame, n, "K")
    with pytest.raises(ValueError, match="matrix not nilpotent"):
        weight_filtration(frame, rr.packages[0].split, "H")
    with pytest.raises(ValueError, match="matrix not in the isometry algebra"):
        weight_filtration(frame, Matrix.identity(2), "H")
    other = jm_triple(frame, rr.packages[0].n_plus, rr)
    with pytest.raises(ValueError, match="triple does not pass through"):
        weight_filtration(frame, n, "H", triple=other)


# -- canonical parabolic subalgebras ---------------------------------------------


def test_canonical_parabolic_of_model():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    t = jm_triple(rr.frame, pkg.n_minus, rr)
    cp = canonical_parabolic(rr, t)
    assert cp.y_coords == (Fraction(1),)
    assert cp.vanishing == ()
    assert cp.algebra == Subspace([flatten(pkg.n_minus), flatten(pkg.split)], 4)
    assert cp.nilradical == Subspace([flatten(pkg.n_minus)], 4)
    assert cp.split_center == Subspace([flatten(pkg.split)], 4)
    assert cp.levi == cp.split_center
    assert cp.anisotropic.dim == 0


# label, frame args, nilpotent terms, vanishing set, (q, levi, a_I, m_Q) dims
PARABOLIC_CASES = [
    ("sp4-regular", (1, (2, 2), "Q"), (((0, 2), 1), ((1, -1), 1)), set(), (6, 2, 2, 0)),
    ("sp4-short", (1, (2, 2), "Q"), (((1, 1), 1),), {(1, -1)}, (7, 4, 1, 3)),
    ("sp4-long", (1, (2, 2), "Q"), (((-2, 0), 1),), {(0, 2)}, (7, 4, 1, 3)),
    ("so22", (2, (1, 2, 1), "Q"), (((-2, 0), 1),), {(0, 2)}, (5, 4, 1, 3)),
    ("wt3-regular", (3, (1, 1, 1, 1), "Q"), (((0, -2), 1), ((-1, 1), 1)), set(), (6, 2, 2, 0)),
]


@lru_cache(maxsize=None)
def parabolic_data(label):
    _, frame_args, terms, vanishing, dims = next(
        c for c in PARABOLIC_CASES if c[0] == label
    )
    rr = rr_of(*frame_args)
    n = build(rr, terms)
    t = jm_triple(rr.frame, n, rr)
    return rr, n, t, canonical_parabolic(rr, t), vanishing, dims


@pytest.fixture(params=[c[0] for c in PARABOLIC_CASES])
def parabolic_case(request):
    return parabolic_data(request.param)


def test_canonical_parabolic_dimensions(parabolic_case):
    rr, n, t, cp, vanishing, dims = parabolic_case
    assert set(cp.vanishing) == vanishing
    assert (cp.algebra.dim, cp.levi.dim, cp.split_center.dim, cp.anisotropic.dim) == dims


def test_canonical_parabolic_matches_filtration(parabolic_case):
    rr, n, t, cp, _, _ = parabolic_case
    w = weight_filtration(rr.frame, n, "g", triple=t)
    assert cp.algebra == w.piece(0)
    assert cp.nilradical == w.piece(-1)
    assert cp.nilradical == cp.root_sum


def test_canonical_parabolic_langlands_pieces(parabolic_case):
    rr, n, t, cp, _, _ = parabolic_case
    assert cp.split_center.contains_vector(flatten(t.split))
    assert cp.levi == cp.split_center.sum_with(cp.anisotropic)
    assert cp.levi.dim == cp.split_center.dim + cp.anisotropic.dim
    assert cp.algebra == cp.levi.sum_with(cp.nilradical)
    # the nilradical fills out the algebra against the levi
    assert cp.algebra.dim == cp.levi.dim + cp.nilradical.dim
    # a parabolic: q plus the opposite nilradical has full dimension
    assert cp.algebra.dim + cp.nilradical.dim == algebra_subspace(rr.frame).dim


def test_canonical_parabolic_is_subalgebra(parabolic_case):
    rr, n, t, cp, _, _ = parabolic_case
    mats = [unflatten(v, rr.frame.dim, rr.frame.dim) for v in cp.algebra.basis]
    for x, y in itertools.combinations(mats, 2):
        assert cp.algebra.contains_vector(flatten(bracket(x, y)))


def test_anisotropic_part_is_theta_stable_subalgebra(parabolic_case):
    rr, n, t, cp, _, _ = parabolic_case
    if cp.anisotropic.dim == 0:
        return
    d = rr.frame.dim
    c0 = weil_operator(rr.frame.reference_filtration())
    c0_inv = c0 ** 3
    mats = [unflatten(v, d, d) for v in cp.anisotropic.basis]
    for x in mats:
        assert cp.anisotropic.contains_vector(flatten(c0 @ x @ c0_inv))
    for x, y in itertools.combinations(mats, 2):
        assert cp.anisotropic.contains_vector(flatten(bracket(x, y)))
    # the split center commutes with all of it
    for v in cp.split_center.basis:
        a = unflatten(v, d, d)
        for x in mats:
            assert bracket(a, x).is_zero()


def test_roots_vanishing_on_split_center_match_y_kernel(parabolic_case):
    # a root vanishes on the split center exactly when it kills Y
    rr, n, t, cp, _, _ = parabolic_case
    d = rr.frame.dim
    center = [unflatten(v, d, d) for v in cp.split_center.basis]
    y_coords = cp.y_coords
    for coords in rr.restricted_roots():
        entry = rr.table[coords]
        if entry.vector is None:
            continue
        value_on_y = sum(Fraction(a) * c for a, c in zip(coords, y_coords))
        kills_center = all(bracket(a, entry.vector).is_zero() for a in center)
        assert (value_on_y == 0) == kills_center


def test_split_center_weight_spaces_match_y_eigenspaces():
    # on the regular orbit the split center is the whole torus; its joint
    # weight spaces on H refine into exactly the eigenspaces of Y
    rr = rr_of(1, (2, 2))
    n = build(rr, (((0, 2), 1), ((1, -1), 1)))
    t = jm_triple(rr.frame, n, rr)
    cp = canonical_parabolic(rr, t)
    assert cp.split_center.dim == 2
    d = rr.frame.dim
    gens = [unflatten(v, d, d) for v in cp.split_center.basis]
    ident = Matrix.identity(d)

    def eigensplit(op):
        found = {}
        for lam in range(-3, 4):
            space = kernel_subspace(op - ident * lam)
            if space.dim:
                found[lam] = space
        return found

    pieces_y = eigensplit(t.split)
    assert sum(p.dim for p in pieces_y.values()) == d
    joint = {}
    for l1, p1 in eigensplit(gens[0]).items():
        for l2, p2 in eigensplit(gens[1]).items():
            both = p1.intersect(p2)
            if both.dim:
                joint[(l1, l2)] = both
    assert sum(p.dim for p in joint.values()) == d
    for lam, space in pieces_y.items():
        parts = [
            joint[w]
            for w in joint
            if all(space.contains_vector(v) for v in joint[w].basis)
        ]
        assert sum(p.dim for p in parts) == space.dim


# -- weighted Dynkin diagrams ----------------------------------------------------


def test_weighted_dynkin_model():
    rr = rr_of(1, (1, 1))
    t = jm_triple(rr.frame, rr.packages[0].n_minus, rr)
    wd = weighted_dynkin(rr, t)
    assert wd.labels == (2,)
    assert wd.values == (-2,)


def test_weighted_dynkin_regular_and_short():
    rr = rr_of(1, (2, 2))
    t_reg = jm_triple(rr.frame, build(rr, (((0, 2), 1), ((1, -1), 1))), rr)
    wd = weighted_dynkin(rr, t_reg)
    assert wd.simple_roots == ((0, 2), (1, -1))
    assert wd.labels == (2, 2)
    t_short = jm_triple(rr.frame, class_vector(rr, (1, 1)), rr)
    wd_short = weighted_dynkin(rr, t_short)
    assert dict(zip(wd_short.simple_roots, wd_short.labels)) == {(0, 2): 2, (1, -1): 0}


def test_weighted_dynkin_so22():
    rr = rr_of(2, (1, 2, 1))
    t = jm_triple(rr.frame, rr.packages[0].n_minus, rr)
    wd = weighted_dynkin(rr, t)
    assert sorted(wd.labels) == [0, 2]


def test_weighted_dynkin_rejects_out_of_range_labels():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    fake = SL2Triple(lowering=pkg.n_minus, split=pkg.split * 2, raising=pkg.n_plus)
    with pytest.raises(ValueError, match="weighted Dynkin labels outside"):
        weighted_dynkin(rr, fake)


def test_weighted_dynkin_needs_aligned_y():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    rotated = SL2Triple(
        lowering=pkg.n_minus, split=rr.frame.rotation_generator(0), raising=pkg.n_plus
    )
    with pytest.raises(ValueError, match="re-run basepoint alignment"):
        weighted_dynkin(rr, rotated)


# -- horizontality ---------------------------------------------------------------


def test_horizontality_of_model_nilpotent():
    rr = rr_of(1, (1, 1))
    w = horizontality_check(rr, rr.packages[0].n_minus)
    assert w.horizontal
    assert set(w.contributing) == {(-2,)}
    assert w.degrees == {(-2,): (1,)}
    # independent re-check of the transport route
    assert rr.frame.graded_piece(w.transported, 1) == w.transported
    assert not w.transported.is_zero()


def test_horizontality_level_one_class_passes():
    rr = rr_of(2, (1, 2, 1))
    w = horizontality_check(rr, class_vector(rr, (-2, 0)))
    assert w.horizontal
    assert set(w.contributing) == {(-2, 0)}


def test_horizontality_positive_class_fails():
    rr = rr_of(2, (1, 2, 1))
    w = horizontality_check(rr, class_vector(rr, (0, 2)))
    assert not w.horizontal
    assert set(w.contributing) == {(0, 2)}


def test_horizontality_weight_three_cases():
    rr = rr_of(3, (1, 1, 1, 1))
    n_good = build(rr, (((0, -2), 1), ((-1, 1), 1)))
    assert horizontality_check(rr, n_good).horizontal
    n_bad = class_vector(rr, (-1, -1))
    w = horizontality_check(rr, n_bad)
    assert not w.horizontal
    assert w.degrees == {(-1, -1): (2,)}
    assert not horizontality_check(rr, n_good + n_bad).horizontal


def test_horizontality_flat_sum_is_horizontal():
    rr = rr_of(1, (2, 2))
    n = rr.packages[0].n_minus + rr.packages[1].n_minus
    w = horizontality_check(rr, n)
    assert w.horizontal
    assert set(w.contributing) == {(-2, 0), (0, -2)}


def test_horizontality_multiplicity_two_needs_coefficients():
    rr = rr_of(2, (2, 2, 2))
    space = rr.root_spaces[(1, 1)]
    assert space.dim == 2
    n = unflatten(space.basis[0], rr.frame.dim, rr.frame.dim)
    with pytest.raises(ValueError, match="decomposition unavailable; supply coefficients"):
        horizontality_check(rr, n)
    with pytest.raises(ValueError, match="class has no stored generator"):
        horizontality_check(rr, coefficients={(1, 1): 1})
    w = horizontality_check(rr, n, coefficients={(1, 1): [1, 0]})
    assert not w.horizontal
    assert set(w.contributing) == {(1, 1)}


def test_horizontality_coefficient_validation():
    rr = rr_of(2, (2, 2, 2))
    n3 = build(rr, (((-2, 0), 2), ((0, -2), 1)))
    assert horizontality_check(rr, n3).horizontal
    w = horizontality_check(rr, n3, coefficients={(-2, 0): 2, (0, -2): 1})
    assert w.horizontal
    assert set(w.contributing) == {(-2, 0), (0, -2)}
    with pytest.raises(ValueError, match="coefficients do not rebuild"):
        horizontality_check(rr, n3, coefficients={(-2, 0): 1})
    with pytest.raises(ValueError, match="unknown restricted root"):
        horizontality_check(rr, coefficients={(9, 9): 1})
    with pytest.raises(ValueError, match="length does not match"):
        horizontality_check(rr, coefficients={(1, 1): [1, 0, 0]})
    with pytest.raises(ValueError, match="need a nilpotent matrix or its coefficients"):
        horizontality_check(rr)


def test_horizontality_requires_nilpotent():
    rr = rr_of(1, (1, 1))
    with pytest.raises(ValueError, match="matrix not nilpotent"):
        horizontality_check(rr, rr.packages[0].split)


# -- decomposition of the semisimple member over the split generators -------------


def test_sigma_decomposition_of_model():
    rr = rr_of(1, (1, 1))
    t = jm_triple(rr.frame, rr.packages[0].n_minus, rr)
    sd = sl2_decompose_Y(rr, t)
    assert sd.coefficients == (1,)
    assert sd.support == ((2,),)
    assert sd.roots == (rr.sigma[0],)


def test_sigma_decomposition_with_sign_flip():
    rr = rr_of(1, (2, 2))
    t = jm_triple(rr.frame, class_vector(rr, (1, 1)), rr)
    sd = sl2_decompose_Y(rr, t)
    assert sd.coefficients == (-1, -1)
    assert sd.support == ((-2, 0), (0, -2))
    assert sd.roots == tuple(tuple(-x for x in g) for g in rr.sigma)


def test_sigma_decomposition_of_flat_sum():
    rr = rr_of(1, (2, 2))
    n = rr.packages[0].n_minus + rr.packages[1].n_minus
    t = jm_triple(rr.frame, n, rr)
    sd = sl2_decompose_Y(rr, t)
    assert sd.coefficients == (1, 1)
    assert sd.support == ((2, 0), (0, 2))
    assert sd.roots == tuple(rr.sigma)


def test_sigma_decomposition_cayley_identity():
    # the Cayley element carries the split picture to the eigenbasis one
    rr = rr_of(1, (2, 2))
    y = rr.packages[0].split + rr.packages[1].split
    z = rr.packages[0].coroot + rr.packages[1].coroot
    assert rr.cayley @ y @ rr.cayley_inverse == z
    n = rr.packages[0].n_minus + rr.packages[1].n_minus
    x = rr.packages[0].x_minus + rr.packages[1].x_minus
    assert rr.cayley @ n @ rr.cayley_inverse == x


def test_sigma_decomposition_rejects_non_unit_coefficients():
    rr = rr_of(1, (2, 2))
    t = jm_triple(rr.frame, build(rr, (((0, 2), 1), ((1, -1), 1))), rr)
    with pytest.raises(ValueError, match="coefficients outside 0"):
        sl2_decompose_Y(rr, t)


def test_sigma_decomposition_rejects_misaligned_y():
    rr = rr_of(1, (1, 1))
    pkg = rr.packages[0]
    rotated = SL2Triple(
        lowering=pkg.n_minus, split=rr.frame.rotation_generator(0), raising=pkg.n_plus
    )
    with pytest.raises(ValueError, match="Y not aligned"):
        sl2_decompose_Y(rr, rotated)
