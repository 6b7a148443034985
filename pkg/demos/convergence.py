"""Residual ratios R(D)/R(2D) of the large-D forms: about 2 for the first-order
forms, about 4 once the second-order corrections are included."""

from hydromoments import HydrogenicState
from hydromoments import largedim as ld

DIMS = (100, 200, 400, 800)


def main():
    state = HydrogenicState(2, 0, 3)
    for alpha in (0.5, 1, 3):
        for label, space, opts in (("position", "position", {}),
                                   ("position, eta-corrected", "position", {"eta_correction": True}),
                                   ("momentum", "momentum", {}),
                                   ("momentum, eta prefactor", "momentum", {"prefactor": "eta"})):
            rep = ld.convergence_report(state, alpha, space, DIMS, **opts)
            ratios = ", ".join(f"{r:.3f}" for r in rep.ratios)
            print(f"alpha={alpha:<4} {label:<25} ratios {ratios}  order {rep.fitted_order:.2f}  [{rep.status}]")


if __name__ == "__main__":
    main()
