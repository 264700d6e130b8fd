"""Dilate-truncate polynomial approximation in Hardy norm.

Polynomials are dense in the Hardy space on the disc and on complete
Reinhardt domains: dilate f by rho < 1, truncate the Taylor expansion at
degree M, and both knobs can be tuned from coefficient data alone to meet
any target error.  The script walks the epsilon ladder for f_{0.9} on U
and the product function on U^2, printing the (rho, M) certificates and
the achieved Hardy-norm error.
"""

from hardylab.registry import default_registry
from hardylab.reinhardt import density_experiment, polydisc


def main():
    reg = default_registry()
    for label, dom, name in (("disc U", polydisc(1), "fa-0.9"),
                             ("bidisc U^2", polydisc(2), "prod-fa-0.9")):
        print(f"{label}, f = {name}:")
        print(f"  {'eps':>5} {'rho':>20} {'M':>4} {'error':>12} met")
        rows = density_experiment(reg.get(name), dom, 1.0, (0.5, 0.1, 0.02),
                                  norm_tol=1e-3)
        for row in rows:
            print(f"  {row.eps:>5} {row.rho:>20.16f} {row.M:>4} "
                  f"{row.error:>12.4e} {row.met}")
        print()


if __name__ == "__main__":
    main()
