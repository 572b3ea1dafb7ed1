"""Scan the truncated algebras R^l_m with I = m^(k+1) and write a CSV table.

    python scripts/run_scan.py --m-max 2 --l-max 5 --out scan.csv
"""
import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from weilforge.criteria import scan_csv, scan_table, scan_truncated


@dataclass(frozen=True)
class RunScanConfig:
    m_max: int = 2
    l_max: int = 5
    workers: int = 1
    out: Path = None


def run(cfg: RunScanConfig) -> int:
    t0 = time.perf_counter()
    rows = scan_truncated(cfg.m_max, cfg.l_max, cfg.workers)
    print(scan_table(rows))
    bad = [r for r in rows if not r.agree]
    print(f"\n{len(rows)} cells, {len(bad)} disagreements, {time.perf_counter() - t0:.1f}s")
    if cfg.out:
        cfg.out.write_text(scan_csv(rows))
        print(f"wrote {cfg.out}")
    return 1 if bad else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=RunScanConfig.m_max)
    ap.add_argument("--l-max", type=int, default=RunScanConfig.l_max)
    ap.add_argument("--workers", type=int, default=RunScanConfig.workers)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args(argv)
    return run(RunScanConfig(a.m_max, a.l_max, a.workers, a.out))


if __name__ == "__main__":
    sys.exit(main())
