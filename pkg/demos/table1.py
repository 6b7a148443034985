"""Exact against large-D moments for the 2s state, D = 50, 250, 500."""

from hydromoments import HydrogenicState, momentum_expectation, position_expectation
from hydromoments import largedim as ld


def main():
    print(f"{'D':>4} {'alpha':>5} {'<r^a> exact':>16} {'<r^a> large D':>16} {'<p^a> exact':>14} {'<p^a> large D':>14}")
    for alpha in (0, 1, 2, -1):
        for D in (50, 250, 500):
            s = HydrogenicState(2, 0, D)
            print(f"{D:>4} {alpha:>5} {position_expectation(s, alpha).value:>16.9g} "
                  f"{ld.position_largeD(s, alpha).value:>16.9g} "
                  f"{momentum_expectation(s, alpha).value:>14.9g} {ld.momentum_largeD(s, alpha).value:>14.9g}")


if __name__ == "__main__":
    main()
