"""Rydberg limits: fixed D as n grows, and the joint n, D limit at fixed ratio."""

from hydromoments import HydrogenicState, momentum_expectation, position_expectation
from hydromoments import rydberg as ry


def main():
    print("fixed D = 3, l = 0: exact / asymptotic - 1")
    for n in (50, 100, 200, 500):
        s = HydrogenicState(n, 0, 3)
        pos = position_expectation(s, 1).value / ry.pos_rydberg_fixedD(s, 1).value - 1
        mom = momentum_expectation(s, 1).value / ry.mom_rydberg_fixedD(s, 1).value - 1
        print(f"  n={n:<4} <r>: {pos:+.3e}   <p>: {mom:+.3e}")

    print("joint limit, D = 2k + 2: exact / arcsine limit - 1")
    for k in (25, 50, 100, 200):
        s = HydrogenicState(k + 1, 0, 2 * k + 2)
        pos = position_expectation(s, 2).value / ry.pos_rydberg_joint(s, 2).value - 1
        mom = momentum_expectation(s, 1).value / ry.mom_rydberg_joint(s, 1).value - 1
        print(f"  k={k:<4} <r^2>: {pos:+.3e}   <p>: {mom:+.3e}")

    print("equilibrium measures: total mass")
    for lam in (0, 0.5, 2, 10):
        r = ry.RatioLambda(lam)
        print(f"  lambda={lam:<4} position {ry.equilibrium_position(r).total_mass():.12f}"
              f"  momentum {ry.equilibrium_momentum(r).total_mass():.12f}")


if __name__ == "__main__":
    main()
