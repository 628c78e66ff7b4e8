"""Asymptotic data of one-parameter degenerations.

A nilpotent orbit is the model degeneration exp(z*N)*F_inf attached to a
horizontal nilpotent N and a limit filtration F_inf in the compact dual.
This module evaluates such orbits exactly, scans vertical lines for
period-domain membership, removes the monodromy twist from a lifted
period map, and runs finite-prefix diagnostics on horospherical
coordinate sequences: Siegel-set membership and the two convergence
conditions (unbounded root growth, bounded-factor convergence).

Everything is a statement about finitely many exact samples.  The
convergence check in particular inspects a tail window of a finite
prefix; it can certify a violation but only ever reports consistency
with convergence, never convergence itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .domain import (
    Filtration,
    HodgeFrame,
    in_compact_dual,
    in_period_domain,
    polarization_positive,
)
from .linalg import Matrix, nilpotent_exp
from .nilpotents import monodromy_log
from .scalars import Scalar

ScalarLike = Union[Scalar, Fraction, int]

CONSISTENT = "consistent-with-convergence"
VIOLATES_GROWTH = "violates-(1)"
VIOLATES_LIMIT = "violates-(2)"


@dataclass(frozen=True)
class NilpotentOrbit:
    """A horizontal nilpotent with a limit filtration, and optionally the
    monodromy element whose twist the orbit untwists."""

    frame: HodgeFrame
    nilpotent: Matrix
    filtration: Filtration
    gamma: Optional[Matrix] = None


def nilpotent_orbit(
    frame: HodgeFrame,
    n: Matrix,
    f_inf: Filtration,
    gamma: Optional[Matrix] = None,
) -> NilpotentOrbit:
    """Validated constructor.  Checks that n is a nilpotent element of the
    isometry algebra, that f_inf lies in the compact dual, and that the
    pair is horizontal: n*F^p inside F^(p-1) for every p.  A supplied
    monodromy matrix must preserve the polarization and be
    quasi-unipotent; the exponential relation between gamma and n is a
    property of specific untwisting data and is checked by untwist, not
    here.
    """
    if not frame.in_isometry_algebra(n):
        raise ValueError("matrix not in the isometry algebra")
    if not (n ** frame.dim).is_zero():
        raise ValueError("matrix not nilpotent")
    if not in_compact_dual(f_inf, frame):
        raise ValueError("limit filtration violates the first bilinear relation")
    for p in range(1, f_inf.weight + 1):
        below = f_inf.piece(p - 1)
        if any(not below.contains_vector(n.apply(v)) for v in f_inf.piece(p).basis):
            raise ValueError("nilpotent violates the infinitesimal period relation")
    if gamma is not None:
        if not frame.in_isometry_group(gamma):
            raise ValueError("monodromy does not preserve the polarization")
        monodromy_log(gamma)
    return NilpotentOrbit(frame, n, f_inf, gamma)


def orbit_at(orbit: NilpotentOrbit, z: ScalarLike) -> Filtration:
    """The filtration exp(z*N)*F_inf, exactly, for any Gaussian-rational z.

    Stays in the compact dual for every z; lands in the period domain
    only for z far enough up the vertical line.
    """
    g = nilpotent_exp(orbit.nilpotent, Scalar.coerce(z))
    f = orbit.filtration
    return Filtration(f.weight, [piece.image_under(g) for piece in f.pieces])


@dataclass(frozen=True)
class MembershipScan:
    """Period-domain membership of exp(iy*N)*F_inf along sampled heights.

    threshold is the least sampled height from which every later sample
    is a member; None when the top sample already fails.  Membership
    need not be monotone in y, so the threshold is a statement about the
    sample set only.
    """

    heights: tuple[Fraction, ...]
    memberships: tuple[bool, ...]
    threshold: Optional[Fraction]


def membership_scan(
    orbit: NilpotentOrbit,
    heights: Sequence[Fraction],
    form: Optional[Matrix] = None,
) -> MembershipScan:
    """Evaluate the orbit at z = iy for each sampled height y.

    form, when given, replaces the frame's polarization in the
    positivity gate (the first bilinear relation is insensitive to the
    replacement's sign, so the compact-dual gate is unchanged); the
    default is the frame's own form.
    """
    ys = tuple(Fraction(y) for y in heights)
    if any(a >= b for a, b in zip(ys, ys[1:])):
        raise ValueError("sample heights must be strictly increasing")
    if not ys:
        raise ValueError("empty height sample")

    def member(point: Filtration) -> bool:
        if form is None:
            return in_period_domain(point, orbit.frame)
        if not in_compact_dual(point, orbit.frame):
            raise ValueError("not a point of the compact dual")
        return polarization_positive(point, form)

    memberships = tuple(
        member(orbit_at(orbit, Scalar(Fraction(0), y))) for y in ys
    )
    threshold: Optional[Fraction] = None
    for y, member in zip(reversed(ys), reversed(memberships)):
        if not member:
            break
        threshold = y
    return MembershipScan(ys, memberships, threshold)


def untwist(
    orbit: NilpotentOrbit,
    z: ScalarLike,
    l: Optional[int] = None,
    n0: Optional[Matrix] = None,
) -> Filtration:
    """Value at z of the untwisted map Psi(z) = exp(-l*z*N0) * Phi(l*z),
    where Phi is the orbit and gamma**l = exp(l*N0).

    l and N0 default to the torsion order and nilpotent logarithm of the
    orbit's monodromy.  The input must actually be gamma-equivariant:
    gamma * Phi(z) = Phi(z+1) as filtrations, which makes Psi invariant
    under z -> z+1.  Both identities are verified at the requested z.
    """
    if orbit.gamma is None:
        raise ValueError("orbit carries no monodromy")
    element = monodromy_log(orbit.gamma)
    if l is None:
        l = element.order
    if n0 is None:
        n0 = element.log
    if l < 1:
        raise ValueError("twisting period must be positive")

    z = Scalar.coerce(z)
    here = orbit_at(orbit, z)
    step = orbit_at(orbit, z + Scalar.coerce(1))
    moved = Filtration(
        here.weight, [piece.image_under(orbit.gamma) for piece in here.pieces]
    )
    if moved != step:
        raise ValueError("input not γ-equivariant")

    def psi(w: Scalar) -> Filtration:
        lw = w * Scalar.coerce(l)
        inner = orbit_at(orbit, lw)
        g = nilpotent_exp(n0, -lw)
        return Filtration(
            inner.weight, [piece.image_under(g) for piece in inner.pieces]
        )

    value = psi(z)
    if value != psi(z + Scalar.coerce(1)):
        raise ValueError("input not γ-equivariant")
    return value


@dataclass(frozen=True)
class ParabolicDescriptor:
    """A rational parabolic named by the simple restricted roots whose
    values cut out its Siegel sets; rank = len(simple_roots) is the
    dimension of the split factor A_P."""

    simple_roots: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)


def siegel_membership(
    values: Sequence[Fraction], descriptor: ParabolicDescriptor, t: Fraction
) -> bool:
    """Whether a split-factor point with the given simple-root values
    alpha(log a) lies in the t-tail of the Siegel set: all values > t."""
    if len(values) != descriptor.rank:
        raise ValueError("coordinate count does not match the parabolic descriptor")
    return all(Fraction(v) > Fraction(t) for v in values)


@dataclass(frozen=True)
class HorosphericalSequence:
    """A sequence in horospherical coordinates for a named parabolic:
    entries (u_j, a_j, m_j) with a_j the simple-root values alpha(log a)
    and m_j coordinates of the bounded factor, plus the candidate limit
    of the m_j.  The u_j are carried opaquely; no condition constrains
    them."""

    descriptor: ParabolicDescriptor
    entries: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]], ...]
    limit: tuple[Fraction, ...]


def horospherical_sequence(
    descriptor: ParabolicDescriptor,
    entries: Sequence[tuple[Sequence[Fraction], Sequence[Fraction], Sequence[Fraction]]],
    limit: Sequence[Fraction],
) -> HorosphericalSequence:
    """Validated constructor: every a_j must have one value per simple
    root and every m_j must match the limit's coordinate count."""
    frozen = []
    limit_t = tuple(Fraction(x) for x in limit)
    for u, a, m in entries:
        a_t = tuple(Fraction(x) for x in a)
        m_t = tuple(Fraction(x) for x in m)
        if len(a_t) != descriptor.rank or len(m_t) != len(limit_t):
            raise ValueError("coordinates do not conform to the parabolic descriptor")
        frozen.append((tuple(Fraction(x) for x in u), a_t, m_t))
    return HorosphericalSequence(descriptor, tuple(frozen), limit_t)


@dataclass(frozen=True)
class TailPolicy:
    """What the convergence diagnostic demands of the sequence tail:
    over the last `window` steps, each simple-root value must grow by
    more than growth_margin per step, and each m_j must lie within
    tolerance of the limit in sup distance.  All comparisons exact."""

    window: int = 3
    growth_margin: Fraction = Fraction(0)
    tolerance: Fraction = Fraction(0)


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of the finite-prefix diagnostic.  first_violation is the
    index of the offending entry, None when consistent."""

    verdict: str
    first_violation: Optional[int]


def convergence_check(
    seq: HorosphericalSequence, policy: TailPolicy = TailPolicy()
) -> ConvergenceVerdict:
    """Check the tail of a horospherical sequence against the two
    convergence conditions: (1) every simple-root value alpha(log a_j)
    increases without bound, sampled as strict growth beyond the margin
    on consecutive tail steps; (2) the bounded factors m_j approach the
    declared limit, sampled as sup-distance within tolerance on the
    tail.  Growth is checked first.  A finite prefix can refute but
    never prove convergence, hence the verdict wording.
    """
    entries = seq.entries
    if not entries:
        raise ValueError("empty horospherical sequence")
    if policy.window < 1:
        raise ValueError("tail window must be positive")
    tail_start = max(0, len(entries) - 1 - policy.window)
    for j in range(tail_start, len(entries) - 1):
        a_now = entries[j][1]
        a_next = entries[j + 1][1]
        if any(b - a <= policy.growth_margin for a, b in zip(a_now, a_next)):
            return ConvergenceVerdict(VIOLATES_GROWTH, j + 1)
    for j in range(max(0, len(entries) - policy.window), len(entries)):
        m = entries[j][2]
        if any(abs(x - y) > policy.tolerance for x, y in zip(m, seq.limit)):
            return ConvergenceVerdict(VIOLATES_LIMIT, j)
    return ConvergenceVerdict(CONSISTENT, None)
