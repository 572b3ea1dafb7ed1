"""Decision procedures for affine structures and the threshold scans.

Each ``*_affine`` function evaluates the general algebraic criterion for a
pair (A, I) and returns an :class:`AffineReport`. Closed-form thresholds are
attached as cross-checks only; they never decide a verdict.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from . import linalg as la
from .algebra import AlgebraElement, WeilAlgebra, truncated_algebra
from .derivations import (
    DerivationWitness,
    ModuleSpec,
    describe_derivation,
    induced_derivation_map,
    is_derivation,
    left_exactness_test,
)
from .errors import HypothesisViolated, ImproperIdeal, NotInvariant
from .ideals import (
    Ideal,
    annihilator,
    invariance_note,
    is_infinitesimally_invariant,
    maximal_power,
    null_square_witness,
    power_index,
)

SUBJECTS = ("weil_bundle", "regular_bundle", "aut_groups", "jet_bundle")


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class ProductWitness:
    """x, y in I with x * y != 0."""

    ideal: Ideal
    x: AlgebraElement
    y: AlgebraElement

    def verify(self) -> bool:
        return self.ideal.contains(self.x) and self.ideal.contains(self.y) and not (self.x * self.y).is_zero()

    def describe(self) -> str:
        return f"({self.x}) * ({self.y}) = {self.x * self.y}"

    def to_json(self) -> dict:
        return {"kind": "product", "x": str(self.x), "y": str(self.y), "product": str(self.x * self.y)}


@dataclass(frozen=True)
class OutsideWitness:
    """x in I but x not in ``container``."""

    ideal: Ideal
    container: Ideal
    container_name: str
    x: AlgebraElement

    def verify(self) -> bool:
        return self.ideal.contains(self.x) and not self.container.contains(self.x)

    def describe(self) -> str:
        return f"{self.x} lies in I but not in {self.container_name}"

    def to_json(self) -> dict:
        return {"kind": "outside", "element": str(self.x), "container": self.container_name}


@dataclass(frozen=True)
class IdealDerivationWitness:
    """A derivation A -> I that does not vanish on I."""

    ideal: Ideal
    inner: DerivationWitness

    def verify(self) -> bool:
        return self.inner.verify(self.ideal)

    def describe(self) -> str:
        return self.inner.describe()

    def to_json(self) -> dict:
        return {
            "kind": "derivation",
            "derivation": describe_derivation(self.inner.algebra, self.inner.derivation),
            "element": str(self.inner.x),
            "value": str(self.inner.value),
        }


@dataclass(frozen=True)
class CokernelWitness:
    """A derivation of B = A/I that is not induced by any derivation of A."""

    quotient: WeilAlgebra
    derivation: tuple
    induced: object  # InducedMap

    def verify(self) -> bool:
        B = self.quotient
        if not is_derivation(B, ModuleSpec.whole(B), self.derivation):
            return False
        elim = la.Eliminator(self.induced.target_space.dim)
        for col in la.transpose(self.induced.matrix, self.induced.target_space.dim):
            elim.add(col)
        coords = self.induced.target_space.coordinates(self.derivation)
        return coords is not None and not elim.contains(coords)

    def describe(self) -> str:
        return f"derivation of the quotient not lifted: {describe_derivation(self.quotient, self.derivation)}"

    def to_json(self) -> dict:
        return {"kind": "cokernel", "derivation": describe_derivation(self.quotient, self.derivation)}


# ---------------------------------------------------------------------------
# reports


@dataclass
class Criterion:
    name: str
    requirement: str
    holds: bool
    witness: Optional[object] = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "requirement": self.requirement,
            "holds": self.holds,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "note": self.note,
        }


@dataclass
class AffineReport:
    subject: str
    holds: bool
    criteria: List[Criterion]
    hypotheses: List[Criterion] = field(default_factory=list)
    thresholds: Optional[dict] = None
    caveats: List[str] = field(default_factory=list)
    algebra: str = ""
    ideal: str = ""

    def failed(self) -> List[Criterion]:
        return [c for c in self.hypotheses + self.criteria if not c.holds]

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "holds": self.holds,
            "algebra": self.algebra,
            "ideal": self.ideal,
            "hypotheses": [c.to_json() for c in self.hypotheses],
            "criteria": [c.to_json() for c in self.criteria],
            "thresholds": self.thresholds,
            "caveats": list(self.caveats),
        }

    def render(self) -> str:
        lines = [f"{self.subject}: {'HOLDS' if self.holds else 'FAILS'}  [{self.algebra}; I = {self.ideal}]"]
        rows = [("hypothesis", c) for c in self.hypotheses] + [("criterion", c) for c in self.criteria]
        width = max((len(c.name) for _, c in rows), default=0)
        for kind, c in rows:
            mark = "ok  " if c.holds else "FAIL"
            lines.append(f"  {mark} {kind:<10} {c.name:<{width}}  {c.requirement}")
            if c.witness is not None:
                lines.append(f"       witness: {c.witness.describe()}")
            if c.note:
                lines.append(f"       note: {c.note}")
        if self.thresholds:
            t = ", ".join(f"{k}={v}" for k, v in self.thresholds.items())
            lines.append(f"  thresholds: {t}")
        for c in self.caveats:
            lines.append(f"  caveat: {c}")
        return "\n".join(lines)


def _describe_algebra(A: WeilAlgebra) -> str:
    if A.truncation:
        m, l = A.truncation
        return f"R^{l}_{m}"
    return f"algebra of dim {A.dim} (height {A.height}, width {A.width})"


def _describe_ideal(A: WeilAlgebra, I: Ideal) -> str:
    k = power_index(A, I)
    if k is not None:
        return f"m^{k}"
    return repr(I)


def _require_proper(I: Ideal):
    if I.is_whole():
        raise ImproperIdeal("the ideal is the whole algebra; the quotient is not a Weil algebra")


def _thresholds(A: WeilAlgebra, I: Ideal) -> Optional[dict]:
    """Closed-form predictions when I = m^(k+1) with k < height."""
    p = power_index(A, I)
    l = A.height
    if p is None or p == 0 or p - 1 >= l:
        return None
    k = p - 1
    out = {"l": l, "k": k, "2k+1>=l": 2 * k + 1 >= l}
    if A.truncation:
        out["m"] = A.truncation[0]
        out["3k+1>=2l"] = 3 * k + 1 >= 2 * l
    return out


def _in_m2_criterion(A: WeilAlgebra, I: Ideal) -> Criterion:
    m2 = maximal_power(A, 2)
    for v in I.basis:
        if not m2.contains(v):
            w = OutsideWitness(I, m2, "m^2", AlgebraElement(A, v))
            return Criterion("in_m2", "I is contained in m^2", False, w)
    return Criterion("in_m2", "I is contained in m^2", True)


def _in_ann_criterion(A: WeilAlgebra, I: Ideal) -> Criterion:
    ann = annihilator(A, I)
    if I.issubset(ann):
        return Criterion("in_ann", "I is contained in Ann(I)", True)
    x, y = null_square_witness(I)
    return Criterion("in_ann", "I is contained in Ann(I)", False, ProductWitness(I, x, y))


def weil_affine(A: WeilAlgebra, I: Ideal) -> AffineReport:
    """Affine structure on M^A -> M^(A/I): holds iff I^2 = 0."""
    _require_proper(I)
    pair = null_square_witness(I)
    crit = Criterion(
        "null_square",
        "I^2 = 0",
        pair is None,
        ProductWitness(I, *pair) if pair else None,
    )
    th = _thresholds(A, I)
    if th is not None:
        th = {k: v for k, v in th.items() if k != "3k+1>=2l"}
        th["predicted"] = th["2k+1>=l"]
        th["agrees"] = th["predicted"] == crit.holds
    return AffineReport("weil_bundle", crit.holds, [crit], thresholds=th,
                        algebra=_describe_algebra(A), ideal=_describe_ideal(A, I))


def regular_affine(A: WeilAlgebra, I: Ideal) -> AffineReport:
    """Affine structure on regular points: holds iff I in m^2 and I in Ann(I)."""
    _require_proper(I)
    crits = [_in_m2_criterion(A, I), _in_ann_criterion(A, I)]
    holds = all(c.holds for c in crits)
    th = _thresholds(A, I)
    if th is not None:
        th = {k: v for k, v in th.items() if k != "3k+1>=2l"}
        th["predicted"] = th["k"] > 0 and th["2k+1>=l"]
        th["agrees"] = th["predicted"] == holds
    return AffineReport("regular_bundle", holds, crits, thresholds=th,
                        algebra=_describe_algebra(A), ideal=_describe_ideal(A, I))


def _require_invariant(A: WeilAlgebra, I: Ideal):
    if not is_infinitesimally_invariant(A, I):
        raise NotInvariant("the ideal is not preserved by every derivation of A")


def _exactness_criteria(A: WeilAlgebra, I: Ideal, evaluable_left: bool):
    crits = []
    if evaluable_left:
        le = left_exactness_test(A, I)
        w = IdealDerivationWitness(I, _normalize_witness(le.witness)) if le.witness else None
        crits.append(Criterion("left_exact", "every derivation A -> I vanishes on I", le.holds, w, le.via))
    psi = induced_derivation_map(A, I)
    w = None
    if not psi.surjective:
        w = CokernelWitness(psi.quotient.target, psi.cokernel_witness(), psi)
    crits.append(
        Criterion(
            "right_exact_lie",
            "Der(A,A) -> Der(A/I,A/I) is onto",
            psi.surjective,
            w,
            f"dim ker = {psi.kernel_dim}, dim coker = {psi.cokernel_dim}",
        )
    )
    return crits


def _normalize_witness(w: DerivationWitness) -> DerivationWitness:
    """Scale the witness derivation to primitive integer entries."""
    from fractions import Fraction
    from math import gcd, lcm

    entries = [c for row in w.derivation for c in row if c]
    den = 1
    for c in entries:
        den = lcm(den, c.denominator)
    num = 0
    for c in entries:
        num = gcd(num, (c * den).numerator)
    s = Fraction(den, num or 1)
    if s == 1:
        return w
    D = tuple(la.scale(s, row) for row in w.derivation)
    return DerivationWitness(w.algebra, D, w.x, s * w.value)


def _exactness_caveats(A: WeilAlgebra, I: Ideal) -> List[str]:
    out = []
    if A.truncation and power_index(A, I) is not None:
        out.append("right exactness: Aut(R^l_m) -> Aut(R^k_m) is onto (truncation of jet groups); Lie-level check also run")
    else:
        out.append("right exactness certified at Lie-algebra level only; Aut(A) may be disconnected")
    out.append(invariance_note(A, I))
    return out


def _annihilator_note(A: WeilAlgebra, I: Ideal, th: Optional[dict]):
    if th is None or "m" not in th:
        return
    l, k = th["l"], th["k"]
    th["ann_is_m^(l-k)"] = annihilator(A, I) == maximal_power(A, l - k)


def aut_affine(A: WeilAlgebra, I: Ideal) -> AffineReport:
    """Affine structure on Aut(A) -> Aut(A/I) with law s (+) D = s + s o D."""
    _require_proper(I)
    _require_invariant(A, I)
    ann_c = _in_ann_criterion(A, I)
    crits = [ann_c, _in_m2_criterion(A, I)] + _exactness_criteria(A, I, ann_c.holds)
    holds = all(c.holds for c in crits)
    th = _thresholds(A, I)
    if th is not None and "3k+1>=2l" in th:
        th = dict(th)
        th["sufficient"] = th["k"] > 0 and th["3k+1>=2l"]
        th["agrees"] = holds or not th["sufficient"]
        _annihilator_note(A, I, th)
    return AffineReport("aut_groups", holds, crits, thresholds=th, caveats=_exactness_caveats(A, I),
                        algebra=_describe_algebra(A), ideal=_describe_ideal(A, I))


def jet_affine(A: WeilAlgebra, I: Ideal, strict: bool = True) -> AffineReport:
    """Affine structure on J^A M -> J^(A/I) M.

    The inclusions I in Ann(I) and I in m^2 are standing hypotheses. With
    ``strict`` a violation raises HypothesisViolated; otherwise the report is
    returned with the failed hypothesis and holds = False.
    """
    _require_proper(I)
    _require_invariant(A, I)
    hyps = [_in_ann_criterion(A, I), _in_m2_criterion(A, I)]
    bad = [h for h in hyps if not h.holds]
    if bad and strict:
        raise HypothesisViolated(f"standing hypothesis fails: {bad[0].requirement}", witness=bad[0].witness)
    crits = _exactness_criteria(A, I, hyps[0].holds) if not bad else []
    holds = not bad and all(c.holds for c in crits)
    th = _thresholds(A, I)
    if th is not None and "3k+1>=2l" in th:
        th = dict(th)
        th["predicted"] = th["k"] > 0 and th["3k+1>=2l"]
        th["agrees"] = th["predicted"] == holds
        _annihilator_note(A, I, th)
    return AffineReport("jet_bundle", holds, crits, hypotheses=hyps, thresholds=th,
                        caveats=_exactness_caveats(A, I) if not bad else [],
                        algebra=_describe_algebra(A), ideal=_describe_ideal(A, I))


CHECKS = {
    "weil": weil_affine,
    "regular": regular_affine,
    "aut": aut_affine,
    "jet": lambda A, I: jet_affine(A, I, strict=False),
}


# ---------------------------------------------------------------------------
# threshold scan


@dataclass(frozen=True)
class ScanConfig:
    m_max: int
    l_max: int
    workers: int = 1


@dataclass(frozen=True)
class ScanRow:
    m: int
    l: int
    k: int
    weil: bool
    regular: bool
    aut: bool
    jet: bool
    predicted_weil: bool
    predicted_jet: bool
    agree: bool
    right_exact: bool

    CSV_COLUMNS = ("m", "l", "k", "weil", "regular", "aut", "jet", "predicted_weil", "predicted_jet", "agree")

    def csv_values(self):
        return [getattr(self, c) for c in self.CSV_COLUMNS]


def scan_cell(m: int, l: int, k: int) -> ScanRow:
    A = truncated_algebra(m, l)
    I = maximal_power(A, k + 1)
    weil = weil_affine(A, I).holds
    regular = regular_affine(A, I).holds
    aut = aut_affine(A, I)
    jet = jet_affine(A, I, strict=False).holds
    right = next(c.holds for c in aut.criteria if c.name == "right_exact_lie")
    pw = 2 * k + 1 >= l
    pj = k > 0 and 3 * k + 1 >= 2 * l
    pr = k > 0 and pw
    agree = weil == pw and jet == pj and regular == pr and (aut.holds or not pj)
    return ScanRow(m, l, k, weil, regular, aut.holds, jet, pw, pj, agree, right)


def _cell(args):
    return scan_cell(*args)


def scan_truncated(m_max: int, l_max: int, workers: int = 1) -> List[ScanRow]:
    """All cells 1 <= m <= m_max, 0 <= k < l <= l_max, ordered by (m, l, k)."""
    cells = [(m, l, k) for m in range(1, m_max + 1) for l in range(1, l_max + 1) for k in range(l)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_cell, cells))
    return [scan_cell(*c) for c in cells]


def scan_csv(rows: Sequence[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ScanRow.CSV_COLUMNS)
    for r in rows:
        w.writerow([str(v).lower() if isinstance(v, bool) else v for v in r.csv_values()])
    return buf.getvalue()


def scan_table(rows: Sequence[ScanRow]) -> str:
    head = f"{'m':>2} {'l':>2} {'k':>2}  {'weil':<5} {'reg':<5} {'aut':<5} {'jet':<5}  {'2k+1>=l':<7} {'3k+1>=2l':<8}"
    out = [head]
    for r in rows:
        f = lambda b: "yes" if b else "no"
        line = (f"{r.m:>2} {r.l:>2} {r.k:>2}  {f(r.weil):<5} {f(r.regular):<5} {f(r.aut):<5} {f(r.jet):<5}"
                f"  {f(r.predicted_weil):<7} {f(r.predicted_jet):<8}")
        if not r.agree:
            line += "  FAILURE"
        out.append(line)
    return "\n".join(out)


def scan_rows_json(rows: Sequence[ScanRow]) -> List[dict]:
    return [asdict(r) for r in rows]
