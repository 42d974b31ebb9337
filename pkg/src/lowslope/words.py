"""Positive Dehn-twist words and the moves that rewrite them.

A :class:`Factorization` is an ordered tuple of normalized curve
expressions (each letter is the positive twist about that curve) plus an
:class:`~lowslope.ledger.InvariantLedger`.  Every operation returns a new
factorization.

Products of letters follow the functional convention: the word
``A_1 A_2 ... A_n`` acts on homology as ``T_1 T_2 ... T_n`` with ``T_n``
applied first, which is the convention under which Hurwitz moves preserve
the product.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from . import lattice
from .expr import CurveExpr, Inverse, MapExpr, Named, Twist
from .ledger import InvariantLedger
from .surface import Surface, get_surface, power_of

if TYPE_CHECKING:
    from .relators import RelatorTemplate


class WordError(ValueError):
    pass


class PatternMismatch(WordError):
    pass


@dataclass(frozen=True)
class Step:
    """One provenance record."""

    op: str
    args: tuple[tuple[str, object], ...] = ()

    @classmethod
    def make(cls, op: str, **args) -> "Step":
        return cls(op, tuple(args.items()))

    def as_dict(self) -> dict:
        return {"op": self.op, "args": dict(self.args)}

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.args)
        return f"{self.op}({inner})"


@dataclass(frozen=True)
class Factorization:
    genus: int
    letters: tuple[CurveExpr, ...]
    ledger: InvariantLedger
    provenance: tuple[Step, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        if self.ledger.genus != self.genus:
            raise WordError("ledger genus does not match word genus")
        if self.ledger.n != len(self.letters):
            raise WordError(f"ledger n={self.ledger.n} but word has {len(self.letters)} letters")

    @classmethod
    def from_letters(
        cls,
        genus: int,
        letters: Iterable[CurveExpr],
        sigma: int = 0,
        *,
        is_relator: bool = True,
        is_fiber_sum: bool = False,
        base_name: str = "",
        provenance: Sequence[Step] = (),
    ) -> "Factorization":
        s = get_surface(genus)
        letters = tuple(s.normalize(x) for x in letters)
        led = InvariantLedger(genus, len(letters), sigma, is_relator, is_fiber_sum, base_name)
        return cls(genus, letters, led, tuple(provenance))

    @classmethod
    def from_names(cls, genus: int, names: Iterable[str], sigma: int = 0, **kw) -> "Factorization":
        return cls.from_letters(genus, [Named(n) for n in names], sigma, **kw)

    @property
    def surface(self) -> Surface:
        return get_surface(self.genus)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def classes(self) -> list[lattice.Vector]:
        hom = self.surface.homology
        return [hom(x) for x in self.letters]

    def count(self, name: str) -> int:
        target = self.surface.named(name)
        return sum(1 for x in self.letters if x == target)

    def named_curves(self) -> set[str]:
        return {x.name for x in self.letters if isinstance(x, Named)}

    def _derive(self, letters, ledger=None, step: Step | None = None, **flags) -> "Factorization":
        led = ledger if ledger is not None else self.ledger
        led = replace(led, n=len(letters), **flags)
        prov = self.provenance + ((step,) if step is not None else ())
        return Factorization(self.genus, tuple(letters), led, prov)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)


# -- Hurwitz moves -----------------------------------------------------------


def hurwitz_move(w: Factorization, i: int, direction: str = "right") -> Factorization:
    """Hurwitz move at letters ``(i, i+1)`` (0-based).

    right: (A, B) -> (B^A, A);  left: (A, B) -> (B, A^{B^-1}).
    """
    if not 0 <= i < len(w) - 1:
        raise IndexError(f"hurwitz index {i} out of range for word of length {len(w)}")
    s = w.surface
    a, b = w.letters[i], w.letters[i + 1]
    if direction == "right":
        pair = (s.image(Twist(a), b), a)
    elif direction == "left":
        pair = (b, s.image(Inverse(Twist(b)), a))
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    letters = w.letters[:i] + pair + w.letters[i + 2 :]
    return w._derive(letters, step=Step.make("hurwitz", i=i, direction=direction))


def _runs(block: Sequence[CurveExpr]) -> list[tuple[CurveExpr, int]]:
    runs: list[tuple[CurveExpr, int]] = []
    for x in block:
        if runs and runs[-1][0] == x:
            runs[-1] = (x, runs[-1][1] + 1)
        else:
            runs.append((x, 1))
    return runs


def _conjugator(s: Surface, block: Sequence[CurveExpr]):
    """Function B -> B^{b_1 ... b_m} for the block b_1 ... b_m."""
    maps = [power_of(Twist(x), k) for x, k in _runs(block)]
    maps.reverse()
    memo: dict[CurveExpr, CurveExpr] = {}

    def conj(letter: CurveExpr) -> CurveExpr:
        out = memo.get(letter)
        if out is None:
            out = letter
            for m in maps:
                out = s.image(m, out)
            memo[letter] = out
        return out

    return conj


def commute_block_right(w: Factorization, start: int, length: int, stop: int) -> Factorization:
    """Move ``letters[start:start+length]`` right so that it ends at ``stop``.

    Equivalent to performing the right Hurwitz moves one at a time: every
    passed letter B becomes B conjugated by the block product.
    """
    n = len(w)
    if not (0 <= start and start + length <= stop <= n):
        raise IndexError("block move out of range")
    block = w.letters[start : start + length]
    conj = _conjugator(w.surface, block)
    passed = [conj(x) for x in w.letters[start + length : stop]]
    letters = w.letters[:start] + tuple(passed) + block + w.letters[stop:]
    return w._derive(letters, step=Step.make("commute_block", start=start, length=length, stop=stop))


def gather_right(w: Factorization, c: str, count: int) -> Factorization:
    """Bring the last ``count`` literal twists about ``c`` to the end of the word.

    Each such letter travels right by Hurwitz moves C U -> U^C C; a letter
    that is passed by k of them becomes its image under T_c^k.
    """
    s = w.surface
    target = s.named(c)
    positions = [i for i, x in enumerate(w.letters) if x == target]
    if count < 0 or len(positions) < count:
        raise WordError(f"word has {len(positions)} literal {target} letters, need {count}")
    if count == 0:
        return w
    chosen = set(positions[-count:])
    first = positions[-count]
    out = list(w.letters[:first])
    tw = Twist(target)
    k = 0
    m = None
    for i in range(first, len(w)):
        if i in chosen:
            k += 1
            m = power_of(tw, k)
            continue
        out.append(s.image(m, w.letters[i]))
    out.extend([target] * count)
    return w._derive(out, step=Step.make("gather_right", curve=target.name, count=count))


def interleave_commuting(w: Factorization, start: int, r: int) -> Factorization:
    """Rewrite ``D^r E^r`` at ``start`` as ``(D E)^r`` for declared-disjoint D, E."""
    s = w.surface
    seg = w.letters[start : start + 2 * r]
    if len(seg) != 2 * r or r == 0:
        raise WordError("interleave segment out of range")
    d, e = seg[0], seg[r]
    if any(x != d for x in seg[:r]) or any(x != e for x in seg[r:]):
        raise PatternMismatch(f"segment is not of the form D^{r} E^{r}")
    if not (s.fixes(d, e) and s.fixes(e, d)):
        raise WordError(f"{d} and {e} are not declared disjoint")
    letters = w.letters[:start] + (d, e) * r + w.letters[start + 2 * r :]
    return w._derive(letters, step=Step.make("interleave", start=start, r=r, d=str(d), e=str(e)))


def global_conjugate(w: Factorization, m: MapExpr) -> Factorization:
    """Replace every letter x by m(x); signature and twist count are unchanged."""
    s = w.surface
    m = s.normalize_map(m)
    s.matrix_of_map(m)  # raises for unknown declared names
    memo: dict[CurveExpr, CurveExpr] = {}
    out = []
    for x in w.letters:
        y = memo.get(x)
        if y is None:
            y = memo[x] = s.image(m, x)
        out.append(y)
    return w._derive(out, step=Step.make("conjugate", map=str(m)))


def fiber_sum(w1: Factorization, w2: Factorization, psi: MapExpr) -> Factorization:
    """Twisted fiber sum with monodromy W_1 W_2^psi."""
    if w1.genus != w2.genus:
        raise WordError(f"genus mismatch: {w1.genus} vs {w2.genus}")
    if not (w1.ledger.is_relator and w2.ledger.is_relator):
        raise WordError("fiber sum needs two relators")
    right = global_conjugate(w2, psi)
    led = w1.ledger + w2.ledger
    step = Step.make("fiber_sum", map=str(psi), n1=len(w1), n2=len(w2))
    return w1._derive(w1.letters + right.letters, ledger=led, step=step, is_fiber_sum=True)


# -- substitutions -------------------------------------------------------------


def _sides(t: "RelatorTemplate", direction: str):
    if direction == "forward":
        return t.lhs, t.rhs, 1
    if direction == "inverse":
        return t.rhs, t.lhs, -1
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def substitute(w: Factorization, at: int, t: "RelatorTemplate", direction: str = "forward") -> Factorization:
    """Replace one side of ``t`` at position ``at`` by the other side."""
    return substitute_many(w, [at], t, direction)


def substitute_many(
    w: Factorization, positions: Sequence[int], t: "RelatorTemplate", direction: str = "forward"
) -> Factorization:
    """Apply the same substitution at several non-overlapping positions."""
    if t.genus != w.genus:
        raise WordError(f"template {t.name} is for genus {t.genus}, word has genus {w.genus}")
    pat, rep, sign = _sides(t, direction)
    k = len(pat)
    out: list[CurveExpr] = []
    prev = 0
    for at in sorted(positions):
        if at < prev or at + k > len(w):
            raise WordError(f"substitution position {at} out of range or overlapping")
        if w.letters[at : at + k] != pat:
            raise PatternMismatch(f"{t.name} {direction}: letters at {at} do not match")
        out.extend(w.letters[prev:at])
        out.extend(rep)
        prev = at + k
    out.extend(w.letters[prev:])
    count = len(positions)
    led = w.ledger.shifted(dsigma=sign * t.delta_sigma * count)
    step = Step.make("substitute", template=t.label, direction=direction, count=count)
    return w._derive(out, ledger=led, step=step)


def find_matches(w: Factorization, t: "RelatorTemplate", direction: str = "forward") -> list[int]:
    """Left-to-right non-overlapping occurrences of the side to be replaced."""
    pat, _, _ = _sides(t, direction)
    k = len(pat)
    if k == 0:
        return []
    out = []
    i = 0
    letters = w.letters
    while i + k <= len(letters):
        if letters[i : i + k] == pat:
            out.append(i)
            i += k
        else:
            i += 1
    return out


# -- homology of the monodromy ---------------------------------------------------

_EXACT = float(2**53)
_CHUNK = 1 << 14


def _tree_reduce(stack: np.ndarray, eye: np.ndarray):
    while len(stack) > 1:
        if len(stack) % 2:
            stack = np.concatenate([stack, eye[None]])
        a, b = stack[0::2], stack[1::2]
        if (np.abs(a) @ np.abs(b)).max() >= _EXACT:
            return None
        stack = a @ b
    return stack[0]


def transvection_product(classes: Sequence[Sequence[int]], dim: int) -> lattice.Matrix:
    """Exact ordered product T_{c_1} T_{c_2} ... T_{c_n}.

    Uses float64 batched products while an entrywise bound certifies that
    every intermediate value is an integer below 2**53; otherwise falls back
    to Python integers.
    """
    if not classes:
        return lattice.identity(dim)
    g = dim // 2
    eye = np.eye(dim)
    c_all = np.asarray(classes, dtype=np.float64)
    partial = []
    exact = np.abs(c_all).max() < 2**20
    if exact:
        for lo in range(0, len(c_all), _CHUNK):
            c = c_all[lo : lo + _CHUNK]
            w = np.concatenate([c[:, g:], -c[:, :g]], axis=1)
            mats = eye[None] + c[:, :, None] * w[:, None, :]
            red = _tree_reduce(mats, eye)
            if red is None:
                exact = False
                break
            partial.append(red)
    if exact:
        red = _tree_reduce(np.stack(partial), eye)
        if red is not None:
            return tuple(tuple(int(x) for x in row) for row in red)
    return lattice.mat_product((lattice.transvection(c) for c in classes), dim)


def product_matrix(w: Factorization) -> lattice.Matrix:
    return transvection_product(w.classes(), w.surface.dim)


def verify_relator_homology(w: Factorization) -> bool:
    """Necessary condition for a relator: the word acts trivially on H_1."""
    return product_matrix(w) == lattice.identity(w.surface.dim)
