"""Exact invariants of a Lefschetz fibration from (genus, n, signature).

Everything is integer or Fraction arithmetic.  The signature is carried
axiomatically: base constants plus substitution deltas plus additivity
under fiber sums.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import TYPE_CHECKING, Union

from . import snf
from .surface import get_surface

if TYPE_CHECKING:
    from .words import Factorization


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantLedger:
    genus: int
    n: int
    sigma: int
    is_relator: bool = True
    is_fiber_sum: bool = False
    base_name: str = ""

    @property
    def e(self) -> int:
        return 4 - 4 * self.genus + self.n

    @property
    def c1_squared(self) -> int:
        return 3 * self.sigma + 2 * self.e

    @property
    def K2(self) -> int:
        return self.c1_squared + 8 * (self.genus - 1)

    @property
    def four_chi_h(self) -> int:
        return self.sigma + self.e

    @property
    def four_chi_f(self) -> int:
        return self.four_chi_h + 4 * (self.genus - 1)

    def shifted(self, dn: int = 0, dsigma: int = 0, **flags) -> "InvariantLedger":
        return replace(self, n=self.n + dn, sigma=self.sigma + dsigma, **flags)

    def __add__(self, other: "InvariantLedger") -> "InvariantLedger":
        if other.genus != self.genus:
            raise LedgerError("genus mismatch")
        return replace(self, n=self.n + other.n, sigma=self.sigma + other.sigma, is_fiber_sum=True)


@dataclass(frozen=True)
class SlopeReport:
    genus: int
    n: int
    e: int
    sigma: int
    chi_h: int
    c1_squared: int
    K2: int
    chi_f: int
    slope: Fraction

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "n": self.n,
            "e": self.e,
            "sigma": self.sigma,
            "chi_h": self.chi_h,
            "c1_squared": self.c1_squared,
            "K2": self.K2,
            "chi_f": self.chi_f,
            "slope": f"{self.slope.numerator}/{self.slope.denominator}",
        }


def slope_report(x: Union["Factorization", InvariantLedger]) -> SlopeReport:
    led = x if isinstance(x, InvariantLedger) else x.ledger
    if led.four_chi_h % 4:
        raise LedgerError(f"sigma + e = {led.four_chi_h} is not divisible by 4")
    chi_h = led.four_chi_h // 4
    chi_f = chi_h + led.genus - 1
    if chi_f <= 0:
        raise LedgerError(f"chi_f = {chi_f} <= 0")
    return SlopeReport(
        genus=led.genus,
        n=led.n,
        e=led.e,
        sigma=led.sigma,
        chi_h=chi_h,
        c1_squared=led.c1_squared,
        K2=led.K2,
        chi_f=chi_f,
        slope=Fraction(led.K2, chi_f),
    )


@dataclass
class BoundsReport:
    results: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]


def sanity_bounds(r: SlopeReport) -> BoundsReport:
    """Check the general inequalities every fibration must satisfy.

    The slope bound is strict (no fibration attains the supremum).
    """
    g = r.genus
    return BoundsReport(
        {
            "K2>=4g-4": r.K2 >= 4 * g - 4,
            "chi_f>=1": r.chi_f >= 1,
            "4|sigma+e": (r.sigma + r.e) % 4 == 0,
            "slope<10": r.chi_f > 0 and Fraction(r.K2, r.chi_f) < 10,
        }
    )


def h1_of_fiber_quotient(w: "Factorization") -> list[int]:
    """Elementary divisors of Z^{2g} modulo the span of the vanishing cycles.

    Divisors equal to 1 are dropped and each free summand contributes a 0,
    so ``[]`` means the quotient is trivial.
    """
    s = get_surface(w.genus)
    dim = s.dim
    seen = set()
    vecs = []
    for letter in w.letters:
        v = s.homology(letter)
        if v not in seen:
            seen.add(v)
            vecs.append(v)
    basis = snf.lattice_basis(vecs, dim)
    if not basis:
        return [0] * dim
    cols = [list(r) for r in zip(*basis)]  # dim x rank
    diag = snf.invariant_factors(cols)
    diag += [0] * (dim - len(diag))
    return [d for d in diag if d != 1]
