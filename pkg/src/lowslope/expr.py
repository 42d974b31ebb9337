"""Symbolic curves and mapping-class expressions.

A curve is either a named curve of the fixed surface or the image of a
curve under a mapping-class expression.  Maps are twists, declared
diffeomorphisms, compositions (rightmost applied first), powers and
inverses.  All nodes are immutable and hash in O(1) (the hash is computed
once at construction), which matters because words with 10^5 letters are
routinely put in dictionaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True, slots=True)
class Named:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("N", self.name)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Image:
    map: "MapExpr"
    of: "CurveExpr"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("I", self.map, self.of)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.map}({self.of})"


@dataclass(frozen=True, slots=True)
class Twist:
    curve: "CurveExpr"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("T", self.curve)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"T[{self.curve}]"


@dataclass(frozen=True, slots=True)
class Declared:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("D", self.name)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Compose:
    parts: tuple["MapExpr", ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        object.__setattr__(self, "_hash", hash(("C", self.parts)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.parts:
            return "id"
        return "(" + "*".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True, slots=True)
class Power:
    base: "MapExpr"
    exp: int
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("P", self.base, self.exp)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.base}^{self.exp}"


@dataclass(frozen=True, slots=True)
class Inverse:
    base: "MapExpr"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("V", self.base)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.base}^-1"


CurveExpr = Union[Named, Image]
MapExpr = Union[Twist, Declared, Compose, Power, Inverse]

IDENTITY = Compose(())


def is_identity(m: MapExpr) -> bool:
    return isinstance(m, Compose) and not m.parts


def size(x) -> int:
    """Node count of a curve or map expression."""
    if isinstance(x, (Named, Declared)):
        return 1
    if isinstance(x, Image):
        return 1 + size(x.map) + size(x.of)
    if isinstance(x, Twist):
        return 1 + size(x.curve)
    if isinstance(x, Compose):
        return 1 + sum(size(p) for p in x.parts)
    if isinstance(x, (Power, Inverse)):
        return 1 + size(x.base)
    raise TypeError(f"not an expression: {x!r}")


def depth(x) -> int:
    if isinstance(x, (Named, Declared)):
        return 1
    if isinstance(x, Image):
        return 1 + max(depth(x.map), depth(x.of))
    if isinstance(x, Twist):
        return 1 + depth(x.curve)
    if isinstance(x, Compose):
        return 1 + max((depth(p) for p in x.parts), default=0)
    return 1 + depth(x.base)
