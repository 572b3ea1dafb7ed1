"""Sparse multivariate polynomials with rational coefficients.

Used in two places: elements typed by the user as polynomials in the
generators of an algebra, and functions on the model manifold R^n.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .linalg import to_fraction

Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(nvars: int, maxdeg: int) -> Tuple[Exponent, ...]:
    """All exponents of total degree <= maxdeg in graded-lexicographic order.

    Degree ascends; inside one degree the first variable dominates, so for
    two variables and degree 2 the order is x1^2, x1*x2, x2^2.
    """
    out: List[Exponent] = []
    for d in range(maxdeg + 1):
        out.extend(_exponents_of_degree(nvars, d))
    return tuple(out)


def _exponents_of_degree(nvars: int, d: int) -> List[Exponent]:
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exponents_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def monomial_label(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponent, Fraction] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = to_fraction(c)
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong arity for {nvars} variables")
                self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars: int) -> List["Polynomial"]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def derivative(self, i: int) -> "Polynomial":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Polynomial(self.nvars, t)

    def evaluate(self, values: Sequence, one):
        """Substitute ``values`` for the variables in any commutative ring.

        ``one`` is the unit of that ring; scalars multiply ring elements on
        the left.
        """
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        powers: Dict[Tuple[int, int], object] = {}

        def power(i, k):
            if k == 0:
                return one
            key = (i, k)
            if key not in powers:
                powers[key] = values[i] if k == 1 else power(i, k - 1) * values[i]
            return powers[key]

        total = one * 0
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + c * term
        return total

    def compose(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """self(polys[0], ..., polys[n-1])."""
        if len(polys) != self.nvars:
            raise ValueError("wrong number of polynomials to substitute")
        nv = polys[0].nvars if polys else 0
        return self.evaluate(list(polys), Polynomial.constant(nv, 1))

    def shift(self, base: Sequence[Fraction]) -> "Polynomial":
        """Rewrite in centred coordinates: returns g with g(y) = self(y + base)."""
        xs = [Polynomial.variable(self.nvars, i) + base[i] for i in range(self.nvars)]
        return self.compose(xs) if self.nvars else self

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def to_string(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        order = {e: i for i, e in enumerate(monomials(self.nvars, self.degree))}
        pieces = []
        for e in sorted(self.terms, key=order.__getitem__):
            c = self.terms[e]
            mono = monomial_label(e, names)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self.to_string([f'x{i + 1}' for i in range(self.nvars)])})"


def random_polynomial(rng, nvars: int, maxdeg: int, density: float = 0.5, coeff_range: int = 3) -> Polynomial:
    terms = {}
    for e in monomials(nvars, maxdeg):
        if rng.random() < density:
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                terms[e] = Fraction(c)
    return Polynomial(nvars, terms)
