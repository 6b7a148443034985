"""Heisenberg and logarithmic uncertainty margins, then entropy bounds for 1s in D = 3."""

from hydromoments import HydrogenicState
from hydromoments import entropy as ent
from hydromoments import uncertainty as unc


def main():
    for D in (3, 10, 100, 1000):
        s = HydrogenicState(1, 0, D)
        h = unc.check_heisenberg_bound(s)
        g = unc.log_uncertainty_sum(s)
        print(f"D={D:<5} <r2><p2>={h.product_value:<14.8g} margin/bound={h.margin / h.bound:.3e}  "
              f"log sum={g.product_value:.6f} margin={g.margin:.3e}")

    s = HydrogenicState(1, 0, 3)
    print(f"\nS = {ent.entropy_quadrature(s).value:.7f}")
    for alpha in (1, 2, 3):
        rep = ent.bound_shannon_upper(s, alpha)
        print(f"Shannon bound alpha={alpha}: {rep.bound_value:.7f} margin {rep.margin:.2e}")
    rep = ent.bound_renyi_upper(s, 2, 2)
    print(f"R_2 = {rep.compared_value:.7f} <= {rep.bound_value:.7f}")
    rep = ent.bound_tsallis_lower(s, 2, 2)
    print(f"W_2 = {rep.compared_value:.7f} >= {rep.bound_value:.7f}")


if __name__ == "__main__":
    main()
