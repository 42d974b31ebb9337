"""Constructions of low-slope fibrations.

The doubling step takes a relator W = V C^r with C the twist about c_1,
forms W^{phi1} W^{phi2} where phi1, phi2 send c_1 to the two boundary
curves d_{h+1}, e_{h+1} of the chain c_1..c_{2h+1}, commutes the D-block
to the right, interleaves it with the E-block and trades every adjacent
D E for an odd-chain block.  Every step either carries the explicit word
or only the (n, sigma) ledger.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .expr import Declared
from .ledger import BoundsReport, InvariantLedger, SlopeReport, h1_of_fiber_quotient, sanity_bounds, slope_report
from .relators import hyperelliptic_names, hyperelliptic_sigma, odd_chain_sigma, relator_library
from .surface import get_surface
from .words import (
    Factorization,
    Step,
    WordError,
    commute_block_right,
    fiber_sum,
    gather_right,
    global_conjugate,
    interleave_commuting,
    substitute_many,
    verify_relator_homology,
)

DEFAULT_MAX_LETTERS = 1_000_000
MAX_LETTERS_ENV = "LOWSLOPE_MAX_LETTERS"

EXPLICIT = "explicit"
LEDGER = "ledger"


class PipelineError(RuntimeError):
    pass


class BudgetExceeded(PipelineError):
    pass


class CertificateError(PipelineError):
    pass


def max_letters(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(MAX_LETTERS_ENV)
    return int(env) if env else DEFAULT_MAX_LETTERS


def hyperelliptic_base(g: int) -> Factorization:
    return Factorization.from_names(
        g,
        hyperelliptic_names(g),
        hyperelliptic_sigma(g),
        base_name=f"hyperelliptic(g={g})",
        provenance=[Step.make("hyperelliptic_base", g=g)],
    )


@dataclass(frozen=True)
class PipelineState:
    ledger: InvariantLedger
    h: int
    r: int
    step: int = 0
    curve: str = "c_1"
    word: Optional[Factorization] = None

    @property
    def genus(self) -> int:
        return self.ledger.genus

    @property
    def mode(self) -> str:
        return EXPLICIT if self.word is not None else LEDGER

    @classmethod
    def start(cls, base: Factorization, h: int, r: int, mode: str = EXPLICIT, curve: str = "c_1") -> "PipelineState":
        if mode not in (EXPLICIT, LEDGER):
            raise ValueError(f"mode must be {EXPLICIT!r} or {LEDGER!r}")
        g = base.genus
        if not 1 <= h <= g - 1:
            raise PipelineError(f"h must lie in 1..{g - 1}, got {h}")
        if r < 1:
            raise PipelineError(f"r must be positive, got {r}")
        if not base.ledger.is_relator:
            raise PipelineError("base word is not a relator")
        s = base.surface
        if not any(s.class_of_name(curve)):
            raise PipelineError(f"designated curve {curve} is separating")
        if base.count(curve) < r:
            raise PipelineError(f"base contains fewer than {r} literal twists about {curve}")
        return cls(base.ledger, h, r, 0, s.canonical(curve), base if mode == EXPLICIT else None)


def _step_ledger(led: InvariantLedger, h: int, r: int) -> InvariantLedger:
    doubled = led + led
    return doubled.shifted(dn=r * (4 * h * h + 6 * h), dsigma=r * odd_chain_sigma(h))


def next_length(n: int, h: int, r: int) -> int:
    return 2 * n + r * (4 * h * h + 6 * h)


def default_maps(g: int, h: int, curve: str = "c_1") -> tuple[str, str]:
    """Declared maps sending the designated curve to d_{h+1} and e_{h+1}."""
    if curve == "c_1":
        if h == 1 and g >= 3:
            return "phi1", "phi2"
        return f"phi1_h{h}", f"phi2_h{h}"
    s = get_surface(g)
    return f"send[{curve}->d_{h + 1}]", f"send[{curve}->{s.canonical(f'e_{h + 1}')}]"


def doubling_step(
    state: PipelineState,
    phi1: Optional[str] = None,
    phi2: Optional[str] = None,
    budget: Optional[int] = None,
) -> PipelineState:
    """One step W_i -> W_{i+1}; the new word keeps its chain blocks ungathered."""
    g, h, r = state.genus, state.h, state.r
    led = _step_ledger(state.ledger, h, r)
    nxt = replace(state, ledger=led, r=2 * (h + 1) * r, step=state.step + 1, curve="c_1")
    if state.word is None:
        return nxt
    limit = max_letters(budget)
    if led.n > limit:
        raise BudgetExceeded(f"step {state.step + 1} would have {led.n} letters, budget is {limit}")
    s = get_surface(g)
    d1, d2 = default_maps(g, h, state.curve)
    phi1, phi2 = phi1 or d1, phi2 or d2
    big_d, big_e = s.named(f"d_{h + 1}"), s.named(f"e_{h + 1}")
    for name, target in ((phi1, big_d), (phi2, big_e)):
        dd = s.declared(name)
        rep = s.check_declared(dd)
        if not rep.ok:
            raise PipelineError("; ".join(rep.failures))
        if s.image(Declared(name), s.named(state.curve)) != target:
            raise PipelineError(f"{name} does not send {state.curve} to {target}")

    w = gather_right(state.word, state.curve, r)
    m = len(w) - r
    first = global_conjugate(w, Declared(phi1))
    summed = fiber_sum(first, w, Declared(phi2))
    # V^phi1 D^r V^phi2 E^r -> V^phi1 (V^phi2)^{D^r} D^r E^r
    summed = commute_block_right(summed, m, r, 2 * m + r)
    summed = interleave_commuting(summed, 2 * m, r)
    chain = relator_library("odd_chain", g, h)
    out = substitute_many(summed, [2 * m + 2 * j for j in range(r)], chain, "forward")
    if out.ledger != led:
        raise PipelineError("explicit ledger disagrees with step arithmetic")
    return replace(nxt, word=out)


def doubling_sequence(
    base: Factorization,
    h: int,
    r: int,
    n: int,
    mode: str = EXPLICIT,
    curve: str = "c_1",
    maps: Optional[tuple[str, str]] = None,
    budget: Optional[int] = None,
) -> list[PipelineState]:
    """States for i = 0..n."""
    st = PipelineState.start(base, h, r, mode, curve)
    out = [st]
    for _ in range(n):
        p1, p2 = maps or (None, None)
        st = doubling_step(st, p1, p2, budget)
        out.append(st)
    return out


def predicted_lengths(n0: int, h: int, r: int, n: int) -> list[int]:
    out = [n0]
    for _ in range(n):
        n0 = next_length(n0, h, r)
        r *= 2 * (h + 1)
        out.append(n0)
    return out


@dataclass(frozen=True)
class ClosedForm:
    K2: int
    four_chi: int

    @property
    def slope(self) -> Fraction:
        return Fraction(4 * self.K2, self.four_chi)


def closed_form_invariants(K0: int, chi0: int, r: int, h: int, n: int) -> ClosedForm:
    """K^2 and 4*chi_f after n doubling steps, from the base values."""
    grow = (h + 1) ** n - 1
    k2 = 2**n * K0 + 2**n * r * grow * h
    four_chi = 2**n * 4 * chi0 + 2**n * r * grow * (h + 1)
    return ClosedForm(k2, four_chi)


def slope_limit(h: int) -> Fraction:
    if h < 1:
        raise ValueError("h must be positive")
    return Fraction(4 * h, h + 1)


def family_slope(g: int, n: int) -> Fraction:
    """Slope of the n-th simply connected family member."""
    return Fraction(2 ** (n + 1) + 8 * g - 10, 2**n + 2 * g - 1)


# -- the simply connected family -------------------------------------------------


@dataclass(frozen=True)
class CertificateSet:
    homology_identity: Optional[bool]
    chain_present: Optional[bool]
    h1_trivial: Optional[bool]
    minimal: bool
    slope_bounds: bool
    sanity: BoundsReport
    missing_curves: tuple[str, ...] = ()
    h1_divisors: tuple[int, ...] = ()

    @property
    def simply_connected(self) -> Optional[bool]:
        if self.chain_present is None or self.h1_trivial is None:
            return None
        return self.chain_present and self.h1_trivial

    @property
    def ok(self) -> bool:
        checks = [self.homology_identity, self.chain_present, self.h1_trivial]
        return all(c is not False for c in checks) and self.minimal and self.slope_bounds and self.sanity.ok

    def failures(self) -> list[str]:
        out = []
        if self.homology_identity is False:
            out.append("homology_identity")
        if self.chain_present is False:
            out.append("chain_present: missing " + ",".join(self.missing_curves))
        if self.h1_trivial is False:
            out.append(f"h1_trivial: divisors {list(self.h1_divisors)}")
        if not self.minimal:
            out.append("minimal")
        if not self.slope_bounds:
            out.append("slope_bounds")
        out.extend(f"sanity:{k}" for k in self.sanity.failures)
        return out

    def as_dict(self) -> dict:
        return {
            "homology_identity": self.homology_identity,
            "chain_present": self.chain_present,
            "h1_trivial": self.h1_trivial,
            "simply_connected": self.simply_connected,
            "minimal": self.minimal,
            "slope_bounds": self.slope_bounds,
            "sanity": self.sanity.ok,
            "failures": self.failures(),
        }


def family_bounds(g: int, n: int, slope: Fraction) -> bool:
    return 2 < slope < 2 + Fraction(4 * g - 8, 2**n)


def certify(F: Factorization | InvariantLedger, n: int) -> tuple[CertificateSet, SlopeReport]:
    led = F if isinstance(F, InvariantLedger) else F.ledger
    rep = slope_report(led)
    g = led.genus
    if isinstance(F, InvariantLedger):
        hom = chain = h1 = None
        missing: tuple[str, ...] = ()
        divisors: list[int] = []
    else:
        hom = verify_relator_homology(F)
        present = F.named_curves()
        missing = tuple(c for c in F.surface.chain() if c not in present)
        chain = not missing
        divisors = h1_of_fiber_quotient(F)
        h1 = not divisors
    cert = CertificateSet(
        homology_identity=hom,
        chain_present=chain,
        h1_trivial=h1,
        minimal=led.is_fiber_sum,
        slope_bounds=family_bounds(g, n, rep.slope),
        sanity=sanity_bounds(rep),
        missing_curves=missing,
        h1_divisors=tuple(divisors),
    )
    return cert, rep


@dataclass(frozen=True)
class FamilyMember:
    states: list[PipelineState]
    total: Factorization | InvariantLedger
    certificates: CertificateSet
    report: SlopeReport

    @property
    def word(self) -> Optional[Factorization]:
        return self.total if isinstance(self.total, Factorization) else None


def simply_connected_member(g: int, n: int, mode: str = EXPLICIT, budget: Optional[int] = None) -> FamilyMember:
    """F_n = f_n twisted-fiber-summed with itself along psi, with certificates."""
    if g < 3:
        raise PipelineError("the simply connected family needs genus >= 3")
    if n < 0:
        raise PipelineError("n must be non-negative")
    states = doubling_sequence(hyperelliptic_base(g), 1, 1, n, mode, maps=("phi1", "phi2"), budget=budget)
    last = states[-1]
    if last.word is None:
        total: Factorization | InvariantLedger = last.ledger + last.ledger
    else:
        if 2 * len(last.word) > max_letters(budget):
            raise BudgetExceeded(f"F_{n} would have {2 * len(last.word)} letters")
        total = fiber_sum(last.word, last.word, Declared("psi"))
    cert, rep = certify(total, n)
    if not cert.ok:
        raise CertificateError(f"F_{n} (g={g}) failed: " + "; ".join(cert.failures()))
    return FamilyMember(states, total, cert, rep)


# -- lantern walks ---------------------------------------------------------------------


@dataclass(frozen=True)
class WalkResult:
    word: Factorization
    before: SlopeReport
    fiber_sum: SlopeReport
    after: SlopeReport

    @property
    def verdict(self) -> str:
        if self.after.slope < self.before.slope:
            return "decreased"
        if self.after.slope > self.before.slope:
            return "increased"
        return "unchanged"


def lantern_walk(w: Factorization, c: str = "c_1", direction: str = "down") -> WalkResult:
    """Several conjugated copies of w, then one lantern substitution.

    down: copies carry c to x, y, z and X Y Z becomes A_1 A_2 A_3 A_4.
    up: copies carry c to a_1..a_4 and A_1 A_2 A_3 A_4 becomes X Y Z.
    """
    s = w.surface
    if w.genus < 3:
        raise PipelineError("lantern walks need genus >= 3")
    if direction == "down":
        targets, sub = ["x", "y", "z"], "forward"
    elif direction == "up":
        targets, sub = ["a_1", "a_2", "a_3", "a_4"], "inverse"
    else:
        raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")
    c = s.canonical(c)
    if not any(s.class_of_name(c)):
        raise PipelineError(f"{c} is separating")
    if w.count(c) < 1:
        raise PipelineError(f"word has no literal twist about {c}")
    before = slope_report(w)
    base = gather_right(w, c, 1)
    maps = []
    for t in targets:
        name = f"send[{c}->{t}]"
        rep = s.check_declared(s.declared(name))
        if not rep.ok:
            raise PipelineError("; ".join(rep.failures))
        maps.append(name)
    total = global_conjugate(base, Declared(maps[0]))
    for name in maps[1:]:
        total = fiber_sum(total, base, Declared(name))
    summed = slope_report(total)
    # V_1 T_1 V_2 T_2 ... V_k T_k: carry the growing block T_1..T_j right past V_{j+1}
    m = len(base) - 1
    for j in range(1, len(targets)):
        start = j * m
        total = commute_block_right(total, start, j, start + j + m)
    tmpl = relator_library("lantern", w.genus)
    out = substitute_many(total, [len(total) - len(targets)], tmpl, sub)
    return WalkResult(out, before, summed, slope_report(out))
