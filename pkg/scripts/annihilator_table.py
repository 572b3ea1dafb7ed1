"""Tabulate Ann(m^(k+1)) in R^l_m against m^(l-k)."""
import argparse
import sys
from dataclasses import dataclass

from weilforge.algebra import truncated_algebra
from weilforge.ideals import annihilator, maximal_power


@dataclass(frozen=True)
class AnnihilatorConfig:
    m_max: int = 2
    l_max: int = 6


def run(cfg: AnnihilatorConfig) -> int:
    bad = 0
    print(f"{'m':>2} {'l':>2} {'k':>2}  {'dim Ann':>7}  {'= m^(l-k)':<9}")
    for m in range(1, cfg.m_max + 1):
        for l in range(1, cfg.l_max + 1):
            A = truncated_algebra(m, l)
            for k in range(l):
                ann = annihilator(A, maximal_power(A, k + 1))
                ok = ann == maximal_power(A, l - k)
                bad += not ok
                print(f"{m:>2} {l:>2} {k:>2}  {ann.dim:>7}  {'yes' if ok else 'no':<9}")
    print(f"\n{bad} cells differ from m^(l-k)")
    return 1 if bad else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=AnnihilatorConfig.m_max)
    ap.add_argument("--l-max", type=int, default=AnnihilatorConfig.l_max)
    a = ap.parse_args(argv)
    return run(AnnihilatorConfig(a.m_max, a.l_max))


if __name__ == "__main__":
    sys.exit(main())
