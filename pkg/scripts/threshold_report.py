"""Compare the jet criterion with the thresholds 3k+1 >= 2l and 2k >= l.

For each truncated algebra R^l_m and I = m^(k+1) with 0 < k < l this prints
which of the two candidate thresholds matches the computed jet criterion,
together with the route taken by the left exactness test.
"""
import argparse
import sys
from dataclasses import dataclass

from weilforge.algebra import truncated_algebra
from weilforge.criteria import jet_affine
from weilforge.derivations import left_exactness_test
from weilforge.ideals import maximal_power


@dataclass(frozen=True)
class ThresholdConfig:
    m_max: int = 2
    l_max: int = 6


def run(cfg: ThresholdConfig) -> int:
    print(f"{'m':>2} {'l':>2} {'k':>2}  {'jet':<5} {'3k+1>=2l':<9} {'2k>=l':<6} via")
    miss_a = miss_b = 0
    for m in range(1, cfg.m_max + 1):
        for l in range(2, cfg.l_max + 1):
            A = truncated_algebra(m, l)
            for k in range(1, l):
                I = maximal_power(A, k + 1)
                holds = jet_affine(A, I, strict=False).holds
                a, b = 3 * k + 1 >= 2 * l, 2 * k >= l
                miss_a += holds != a
                miss_b += holds != b
                via = left_exactness_test(A, I).via if 2 * k + 1 >= l else "-"
                f = lambda v: "yes" if v else "no"
                print(f"{m:>2} {l:>2} {k:>2}  {f(holds):<5} {f(a):<9} {f(b):<6} {via}")
    print(f"\nmismatches: 3k+1 >= 2l: {miss_a}, 2k >= l: {miss_b}")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=ThresholdConfig.m_max)
    ap.add_argument("--l-max", type=int, default=ThresholdConfig.l_max)
    a = ap.parse_args(argv)
    return run(ThresholdConfig(a.m_max, a.l_max))


if __name__ == "__main__":
    sys.exit(main())
