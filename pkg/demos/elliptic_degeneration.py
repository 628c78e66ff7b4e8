"""Walk the weight-1 elliptic domain from roots to boundary.

Builds the h = (1, 1) frame, picks the lowering direction of its single
strongly orthogonal root, and follows that nilpotent through the weight
filtration, the boundary report, and a membership scan of the orbit.
Run with: python3 demos/elliptic_degeneration.py
"""

from fractions import Fraction

from hodgerbs.asympt import membership_scan, nilpotent_orbit, untwist
from hodgerbs.boundary import boundary_report
from hodgerbs.domain import Filtration, HodgeFrame, domain_dimensions
from hodgerbs.linalg import nilpotent_exp
from hodgerbs.nilpotents import weight_filtration
from hodgerbs.roots import restrict_roots
from hodgerbs.scalars import I, Scalar


def main() -> None:
    frame = HodgeFrame(1, (1, 1))
    print("domain:", domain_dimensions(frame))

    rr = restrict_roots(frame)
    print("restricted roots:", sorted(rr.table))
    print("split rank:", rr.rank)

    pkg = rr.packages[0]
    n = pkg.n_minus
    print("lowering n_minus:")
    for row in n.rows:
        print("  ", [str(s) for s in row])

    w = weight_filtration(frame, n, "H", rr=rr)
    print("weight filtration jumps on H:", {j: w.piece(j).dim for j in range(-1, 4)})

    g = nilpotent_exp(n, -I)
    ref = frame.reference_filtration()
    f_inf = Filtration(ref.weight, [p.image_under(g) for p in ref.pieces])

    report = boundary_report(frame, n, f_inf, rr=rr)
    for level in report.levels:
        print(
            "level", level.level,
            "weight", level.weight,
            "dim_P", level.dim_primitive,
            "polarized", level.polarized,
        )
    print("fibration dim_m:", report.fibration.dim_m)

    orbit = nilpotent_orbit(frame, n, f_inf, gamma=nilpotent_exp(n))
    heights = [Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(1), Fraction(2)]
    scan = membership_scan(orbit, heights)
    print("memberships along iy:", list(scan.memberships))
    print("threshold:", scan.threshold)

    z = Scalar(Fraction(3, 2), Fraction(1, 3))
    print("untwisted orbit is constant:", untwist(orbit, z) == f_inf)


if __name__ == "__main__":
    main()
