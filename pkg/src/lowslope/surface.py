"""The fixed closed genus-g surface with its standard curve system.

Curves c_1..c_{2g+1} form the maximal chain, d_i / e_i are the two
boundary curves of a regular neighbourhood of the chain c_1..c_{2i-1}
(so e_g is the same curve as c_{2g+1}), u encloses the first two handles,
s_h bounds the neighbourhood of the even chain c_1..c_{2h}, and
a_1..a_4, x, y, z are a lantern configuration on the first three handles.

Homology classes (x/y basis, <x_i, y_i> = 1):

    [c_1] = y_1           [c_2i] = x_i         [c_2i+1] = y_{i+1} - y_i
    [c_{2g+1}] = -y_g     [d_i] = y_i          [e_i] = -y_i
    [u] = x_1 + x_2       [s_h] = 0
    [a_1], [a_2], [a_3], [a_4] = x_1, x_2, x_3, -x_1-x_2-x_3
    [x], [y], [z] = x_1+x_2, x_2+x_3, x_1+x_3

Normalization is structural: a twist fixes a curve only when the pair is
declared disjoint (or equal), a declared map sends a named curve to a
named curve only through its axiom table.  Homology is never used to
decide equality of curves.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import lattice
from .expr import (
    IDENTITY,
    Compose,
    CurveExpr,
    Declared,
    Image,
    Inverse,
    MapExpr,
    Named,
    Power,
    Twist,
    is_identity,
)
from .lattice import Matrix, Vector


class SurfaceError(ValueError):
    pass


class UnknownNameError(SurfaceError):
    pass


@dataclass(frozen=True)
class DeclaredDiffeo:
    """A named diffeomorphism known through its homology matrix and a finite
    table of curve images (``axioms``)."""

    name: str
    axioms: tuple[tuple[str, str], ...]
    matrix: Matrix
    word: Optional[MapExpr] = None

    @property
    def axiom_map(self) -> dict[str, str]:
        return dict(self.axioms)


@dataclass
class ConsistencyReport:
    name: str
    symplectic: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.symplectic and not self.failures


def _classes(g: int) -> dict[str, Vector]:
    def v(**kw):
        return lattice.combination(g, **kw)

    table = {"c_1": v(y1=1)}
    for i in range(1, g + 1):
        table[f"c_{2 * i}"] = v(**{f"x{i}": 1})
        table[f"d_{i}"] = v(**{f"y{i}": 1})
        table[f"e_{i}"] = v(**{f"y{i}": -1})
    for i in range(1, g):
        table[f"c_{2 * i + 1}"] = v(**{f"y{i + 1}": 1, f"y{i}": -1})
        table[f"s_{i}"] = tuple([0] * (2 * g))
    table[f"c_{2 * g + 1}"] = v(**{f"y{g}": -1})
    table["u"] = v(x1=1, x2=1)
    if g >= 3:
        table.update(
            {
                "a_1": v(x1=1),
                "a_2": v(x2=1),
                "a_3": v(x3=1),
                "a_4": v(x1=-1, x2=-1, x3=-1),
                "x": v(x1=1, x2=1),
                "y": v(x2=1, x3=1),
                "z": v(x1=1, x3=1),
            }
        )
    return table


def _disjoint_pairs(g: int, alias) -> set[frozenset]:
    pairs: set[frozenset] = set()

    def add(a, b):
        a, b = alias(a), alias(b)
        if a != b:
            pairs.add(frozenset((a, b)))

    n = 2 * g + 1
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            add(f"c_{i}", f"c_{j}")
    for i in range(1, g + 1):
        add(f"d_{i}", f"e_{i}")
        for j in list(range(1, 2 * i)) + list(range(2 * i + 2, n + 1)):
            add(f"d_{i}", f"c_{j}")
            add(f"e_{i}", f"c_{j}")
        for j in range(1, g + 1):
            if j != i:
                add(f"d_{i}", f"d_{j}")
                add(f"e_{i}", f"e_{j}")
                add(f"d_{i}", f"e_{j}")
    for h in range(1, g):
        for j in range(1, n + 1):
            if j != 2 * h + 1:
                add(f"s_{h}", f"c_{j}")
    if g >= 3:
        for i in range(1, 5):
            for j in range(i + 1, 5):
                add(f"a_{i}", f"a_{j}")
    return pairs


_SEND = re.compile(r"^send\[([A-Za-z0-9_]+)->([A-Za-z0-9_]+)\]$")
_PHI_H = re.compile(r"^phi([12])_h(\d+)$")


class Surface:
    """Closed genus-g surface with named curves and declared maps.

    Use :func:`get_surface` rather than constructing directly; expression
    caches live on the instance and are shared by every word of that genus.
    """

    def __init__(self, genus: int):
        if genus < 2:
            raise SurfaceError(f"genus must be >= 2, got {genus}")
        self.genus = genus
        self.dim = 2 * genus
        self.aliases = {f"e_{genus}": f"c_{2 * genus + 1}"}
        raw = _classes(genus)
        self.classes: dict[str, Vector] = {
            name: vec for name, vec in raw.items() if name not in self.aliases
        }
        self.disjoint = _disjoint_pairs(genus, self.canonical)
        self._declared: dict[str, DeclaredDiffeo] = {}
        self._named: dict[str, Named] = {}
        self._image_cache: dict[tuple, CurveExpr] = {}
        self._hom_cache: dict[CurveExpr, Vector] = {}
        self._mat_cache: dict[MapExpr, Matrix] = {}

    def __repr__(self):
        return f"Surface(genus={self.genus})"

    # -- names -------------------------------------------------------------

    def canonical(self, name: str) -> str:
        return self.aliases.get(name, name)

    def named(self, name: str) -> Named:
        name = self.canonical(name)
        n = self._named.get(name)
        if n is None:
            n = self._named[name] = Named(name)
        return n

    def chain(self) -> list[str]:
        return [f"c_{j}" for j in range(1, 2 * self.genus + 2)]

    def is_declared_disjoint(self, a: str, b: str) -> bool:
        return frozenset((self.canonical(a), self.canonical(b))) in self.disjoint

    def class_of_name(self, name: str) -> Vector:
        try:
            return self.classes[self.canonical(name)]
        except KeyError:
            raise UnknownNameError(f"unknown curve {name!r} on genus {self.genus}") from None

    # -- declared maps -----------------------------------------------------

    def register(self, d: DeclaredDiffeo) -> DeclaredDiffeo:
        old = self._declared.get(d.name)
        if old is not None and (old.matrix != d.matrix or old.axioms != d.axioms):
            raise SurfaceError(f"declared map {d.name!r} already registered differently")
        if len(d.matrix) != self.dim:
            raise SurfaceError(f"matrix of {d.name!r} has wrong size")
        axioms = tuple((self.canonical(a), self.canonical(b)) for a, b in d.axioms)
        if axioms != d.axioms:
            d = DeclaredDiffeo(d.name, axioms, d.matrix, d.word)
        self._declared[d.name] = d
        return d

    def declared(self, name: str) -> DeclaredDiffeo:
        d = self._declared.get(name)
        if d is None:
            d = self.register(self._build_standard(name))
        return d

    def _build_standard(self, name: str) -> DeclaredDiffeo:
        g = self.genus
        fixed = ["c_3"] + [f"c_{j}" for j in range(6, 2 * g + 2)]
        if name in ("phi1", "phi2"):
            if g < 3:
                raise UnknownNameError(f"{name} needs genus >= 3")
            mid = "d_2" if name == "phi1" else "e_2"
            word = Compose(
                (Twist(self.named("u")), Twist(self.named(mid)), Twist(self.named("c_1")), Twist(self.named("u")))
            )
            axioms = [("c_1", mid)] + [(c, c) for c in fixed]
            return DeclaredDiffeo(name, tuple(axioms), self.matrix_of_map(word), word)
        m = _PHI_H.match(name)
        if m:
            which, h = m.group(1), int(m.group(2))
            if not 1 <= h <= g - 1:
                raise UnknownNameError(f"{name}: h must lie in 1..{g - 1}")
            target = f"d_{h + 1}" if which == "1" else f"e_{h + 1}"
            return self.extension_map(name, [("c_1", target)])
        if name == "psi":
            if g < 3:
                raise UnknownNameError("psi needs genus >= 3")
            return self.extension_map(name, [("c_1", "c_4"), ("c_2", "c_5")])
        m = _SEND.match(name)
        if m:
            return self.extension_map(name, [(m.group(1), m.group(2))])
        raise UnknownNameError(f"unknown declared map {name!r}")

    def extension_map(self, name: str, axioms: list[tuple[str, str]]) -> DeclaredDiffeo:
        """Declared map whose matrix is a symplectic extension of ``axioms``."""
        cons = [(self.class_of_name(a), self.class_of_name(b), True) for a, b in axioms]
        try:
            mat = lattice.symplectic_extension(cons)
        except lattice.ExtensionError as exc:
            raise SurfaceError(f"cannot realize {name}: {exc}") from exc
        axioms = [(self.canonical(a), self.canonical(b)) for a, b in axioms]
        return DeclaredDiffeo(name, tuple(axioms), mat)

    def check_declared(self, d: DeclaredDiffeo) -> ConsistencyReport:
        rep = ConsistencyReport(d.name, lattice.is_symplectic(d.matrix))
        if not rep.symplectic:
            rep.failures.append(f"{d.name}: matrix is not symplectic")
        for a, b in d.axioms:
            try:
                va, vb = self.class_of_name(a), self.class_of_name(b)
            except UnknownNameError as exc:
                rep.failures.append(str(exc))
                continue
            img = lattice.mat_vec(d.matrix, va)
            if img != vb and img != lattice.neg(vb):
                rep.failures.append(f"{d.name}: [{a}] maps to {img}, expected +-{vb} = +-[{b}]")
        return rep

    # -- homology ----------------------------------------------------------

    def homology(self, e: CurveExpr) -> Vector:
        v = self._hom_cache.get(e)
        if v is None:
            if isinstance(e, Named):
                v = self.class_of_name(e.name)
            elif isinstance(e, Image):
                v = self.apply_map(e.map, self.homology(e.of))
            else:
                raise TypeError(f"not a curve expression: {e!r}")
            self._hom_cache[e] = v
        return v

    def apply_map(self, m: MapExpr, v: Vector) -> Vector:
        if isinstance(m, Twist):
            return lattice.apply_transvection(v, self.homology(m.curve))
        if isinstance(m, Power) and isinstance(m.base, Twist):
            return lattice.apply_transvection(v, self.homology(m.base.curve), m.exp)
        if isinstance(m, Inverse) and isinstance(m.base, Twist):
            return lattice.apply_transvection(v, self.homology(m.base.curve), -1)
        if isinstance(m, Compose):
            for p in reversed(m.parts):
                v = self.apply_map(p, v)
            return v
        return lattice.mat_vec(self.matrix_of_map(m), v)

    def matrix_of_map(self, m: MapExpr) -> Matrix:
        mat = self._mat_cache.get(m)
        if mat is not None:
            return mat
        if isinstance(m, Twist):
            mat = lattice.transvection(self.homology(m.curve))
        elif isinstance(m, Declared):
            mat = self.declared(m.name).matrix
        elif isinstance(m, Compose):
            mat = lattice.mat_product((self.matrix_of_map(p) for p in m.parts), self.dim)
        elif isinstance(m, Power):
            mat = lattice.mat_pow(self.matrix_of_map(m.base), m.exp)
        elif isinstance(m, Inverse):
            mat = lattice.symplectic_inverse(self.matrix_of_map(m.base))
        else:
            raise TypeError(f"not a map expression: {m!r}")
        self._mat_cache[m] = mat
        return mat

    # -- normalization -----------------------------------------------------

    def normalize(self, e: CurveExpr) -> CurveExpr:
        if isinstance(e, Named):
            return self.named(e.name)
        return self.image(self.normalize_map(e.map), self.normalize(e.of))

    def normalize_map(self, m: MapExpr) -> MapExpr:
        if isinstance(m, Twist):
            return Twist(self.normalize(m.curve))
        if isinstance(m, Declared):
            return m
        if isinstance(m, Compose):
            parts: list[MapExpr] = []
            for p in m.parts:
                p = self.normalize_map(p)
                if isinstance(p, Compose):
                    parts.extend(p.parts)
                else:
                    parts.append(p)
            if len(parts) == 1:
                return parts[0]
            return Compose(tuple(parts))
        if isinstance(m, Power):
            return power_of(self.normalize_map(m.base), m.exp)
        if isinstance(m, Inverse):
            return power_of(self.normalize_map(m.base), -1)
        raise TypeError(f"not a map expression: {m!r}")

    def fixes(self, a: CurveExpr, b: CurveExpr) -> bool:
        """Whether the twist about ``a`` structurally fixes ``b``."""
        if a == b:
            return True
        if isinstance(a, Named) and isinstance(b, Named):
            return frozenset((a.name, b.name)) in self.disjoint
        if isinstance(a, Image) and isinstance(b, Image) and a.map == b.map:
            return self.fixes(a.of, b.of)
        return False

    def image(self, m: MapExpr, e: CurveExpr) -> CurveExpr:
        """Normalized ``Image(m, e)`` for already-normalized ``m`` and ``e``."""
        key = (m, e)
        out = self._image_cache.get(key)
        if out is None:
            out = self._image_cache[key] = self._image(m, e)
        return out

    def _image(self, m: MapExpr, e: CurveExpr) -> CurveExpr:
        if is_identity(m):
            return e
        if isinstance(m, Compose):
            # compositions are distributed into nested images, rightmost first
            for p in reversed(m.parts):
                e = self.image(p, e)
            return e
        base, k = as_power(m)
        if isinstance(base, Twist) and self.fixes(base.curve, e):
            return e
        if isinstance(base, Declared) and isinstance(e, Named) and k in (1, -1):
            d = self.declared(base.name)
            if k == 1:
                for a, b in d.axioms:
                    if a == e.name:
                        return self.named(b)
            else:
                for a, b in d.axioms:
                    if b == e.name:
                        return self.named(a)
        if isinstance(e, Image):
            base2, k2 = as_power(e.map)
            if base2 == base:
                return self.image(power_of(base, k + k2), e.of)
        return Image(m, e)

    def clear_caches(self) -> None:
        self._image_cache.clear()
        self._hom_cache.clear()


def as_power(m: MapExpr) -> tuple[MapExpr, int]:
    if isinstance(m, Power):
        return m.base, m.exp
    if isinstance(m, Inverse):
        return m.base, -1
    return m, 1


def power_of(base: MapExpr, k: int) -> MapExpr:
    """Canonical form of ``base**k`` (``base`` already normalized)."""
    if is_identity(base) or k == 0:
        return IDENTITY
    if isinstance(base, (Power, Inverse)):
        b, j = as_power(base)
        return power_of(b, j * k)
    if k == 1:
        return base
    if k == -1:
        return Inverse(base)
    return Power(base, k)


@functools.lru_cache(maxsize=None)
def get_surface(genus: int) -> Surface:
    return Surface(genus)


# -- module-level conveniences mirroring the operation names ---------------


def homology_of_curve(e: CurveExpr, genus: int) -> Vector:
    return get_surface(genus).homology(e)


def matrix_of_map(m: MapExpr, genus: int) -> Matrix:
    return get_surface(genus).matrix_of_map(m)


def normalize_curve(e: CurveExpr, genus: int) -> CurveExpr:
    return get_surface(genus).normalize(e)


def check_declared_consistency(d: DeclaredDiffeo, genus: Optional[int] = None) -> ConsistencyReport:
    g = genus if genus is not None else len(d.matrix) // 2
    return get_surface(g).check_declared(d)


def declared_from_word(
    name: str, word: MapExpr, axioms: Iterable[tuple[str, str]] | Mapping[str, str], genus: int
) -> DeclaredDiffeo:
    s = get_surface(genus)
    if isinstance(axioms, Mapping):
        axioms = axioms.items()
    return DeclaredDiffeo(name, tuple((s.canonical(a), s.canonical(b)) for a, b in axioms), s.matrix_of_map(word), word)
