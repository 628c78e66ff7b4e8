"""Inspect a rank-1 degeneration of the weight-2 h = (1, 2, 1) domain.

The isometry algebra here is so(2,2) with split rank 2.  A single
lowering direction gives a horizontal nilpotent whose canonical
parabolic, weighted Dynkin diagram, and boundary fibration are printed
below.  Run with: python3 demos/two_sided_boundary.py
"""

from hodgerbs.boundary import boundary_report
from hodgerbs.domain import Filtration, HodgeFrame
from hodgerbs.linalg import nilpotent_exp
from hodgerbs.nilpotents import (
    canonical_parabolic,
    horizontality_check,
    jm_triple,
    weighted_dynkin,
)
from hodgerbs.roots import restrict_roots
from hodgerbs.scalars import I


def main() -> None:
    frame = HodgeFrame(2, (1, 2, 1))
    rr = restrict_roots(frame)
    n = rr.table[(-2, 0)].vector

    witness = horizontality_check(rr, n)
    print("horizontal:", witness.horizontal)
    print("contributing restricted roots:", witness.contributing)

    triple = jm_triple(frame, n, rr)
    parabolic = canonical_parabolic(rr, triple)
    print("parabolic dim:", parabolic.algebra.dim)
    print("levi dim:", parabolic.levi.dim)
    print("split center dim:", parabolic.split_center.dim)
    print("anisotropic levi dim:", parabolic.anisotropic.dim)

    diagram = weighted_dynkin(rr, triple)
    print(
        "weighted Dynkin:",
        {r: str(v) for r, v in zip(diagram.simple_roots, diagram.labels)},
    )

    g = nilpotent_exp(n, -I)
    ref = frame.reference_filtration()
    f_inf = Filtration(ref.weight, [p.image_under(g) for p in ref.pieces])
    report = boundary_report(frame, n, f_inf, rr=rr)
    for level in report.levels:
        print(
            "level", level.level,
            "dim_gr", level.dim_graded,
            "dim_P", level.dim_primitive,
            "signature", level.signature,
            "polarized", level.polarized,
        )
    fib = report.fibration
    print("dim_m:", fib.dim_m)
    print("centralizer cap m:", fib.dim_centralizer_cap_m)
    print("sum of form symmetry dims:", fib.sum_dim_form_symmetries)
    print("monodromy trivial on graded pieces:", report.trivial_on_graded)


if __name__ == "__main__":
    main()
