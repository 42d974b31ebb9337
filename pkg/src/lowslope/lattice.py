"""Integer symplectic lattice Z^{2g}.

Coordinates are ordered (x_1..x_g, y_1..y_g) with <x_i, y_i> = 1.  Vectors
are tuples of ints and matrices are tuples of row tuples, so everything is
hashable and exact.  The Dehn twist about a curve of class c acts on
homology by the transvection v -> v + <v, c> c.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


class ExtensionError(LatticeError):
    """No symplectic matrix realizes the requested curve images."""


def basis_vector(g: int, label: str) -> Vector:
    """``basis_vector(3, "y2")`` -> the coordinate vector of y_2."""
    kind, idx = label[0], int(label[1:])
    if kind not in "xy" or not 1 <= idx <= g:
        raise LatticeError(f"bad basis label {label!r} for genus {g}")
    v = [0] * (2 * g)
    v[idx - 1 + (g if kind == "y" else 0)] = 1
    return tuple(v)


def combination(g: int, **coeffs: int) -> Vector:
    """``combination(3, x1=1, y2=-1)`` -> x_1 - y_2."""
    v = [0] * (2 * g)
    for label, a in coeffs.items():
        b = basis_vector(g, label)
        v = [p + a * q for p, q in zip(v, b)]
    return tuple(v)


def pairing_form(g: int) -> Matrix:
    d = 2 * g
    rows = [[0] * d for _ in range(d)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return tuple(tuple(r) for r in rows)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v) or len(u) % 2:
        raise LatticeError(f"dimension mismatch: {len(u)} vs {len(v)}")
    g = len(u) // 2
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def is_primitive(v: Sequence[int]) -> bool:
    d = 0
    for a in v:
        d = gcd(d, a)
    return d == 1


def add(u: Sequence[int], v: Sequence[int], k: int = 1) -> Vector:
    return tuple(a + k * b for a, b in zip(u, v))


def neg(v: Sequence[int]) -> Vector:
    return tuple(-a for a in v)


def apply_transvection(v: Sequence[int], c: Sequence[int], k: int = 1) -> Vector:
    """T_c^k v.  Powers are linear in k because <c, c> = 0."""
    t = k * pairing(v, c)
    if not t:
        return tuple(v)
    return tuple(a + t * b for a, b in zip(v, c))


def transvection(c: Sequence[int]) -> Matrix:
    """Matrix of v -> v + <v, c> c, i.e. I + c (Jc)^T."""
    d = len(c)
    g = d // 2
    w = [c[g + j] for j in range(g)] + [-c[j] for j in range(g)]
    return tuple(
        tuple((1 if i == j else 0) + c[i] * w[j] for j in range(d)) for i in range(d)
    )


def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_product(mats: Iterable[Matrix], d: int) -> Matrix:
    out = identity(d)
    for m in mats:
        out = mat_mul(out, m)
    return out


def is_symplectic(m: Matrix) -> bool:
    g = len(m) // 2
    j = pairing_form(g)
    return mat_mul(mat_mul(transpose(m), j), m) == j


def symplectic_inverse(m: Matrix) -> Matrix:
    """M^{-1} = -J M^T J, valid for symplectic M."""
    j = pairing_form(len(m) // 2)
    p = mat_mul(mat_mul(j, transpose(m)), j)
    return tuple(tuple(-x for x in row) for row in p)


def mat_pow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        m, k = symplectic_inverse(m), -k
    out = identity(len(m))
    while k:
        if k & 1:
            out = mat_mul(out, m)
        m = mat_mul(m, m)
        k >>= 1
    return out


def from_columns(cols: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*cols))


# -- symplectic extension ---------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (d, s, t) with s*a + t*b = d = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _handle_move(g: int, i: int, a: int, b: int, c: int, d: int) -> Matrix:
    """SL(2) block acting on the (x_i, y_i) plane (0-based i)."""
    rows = [list(r) for r in identity(2 * g)]
    xi, yi = i, g + i
    rows[xi][xi], rows[xi][yi] = a, b
    rows[yi][xi], rows[yi][yi] = c, d
    return tuple(tuple(r) for r in rows)


def _x_change(g: int, a: Sequence[Sequence[int]], a_inv_t: Sequence[Sequence[int]]) -> Matrix:
    """Block diag(A, A^{-T}); symplectic for any A in GL(g, Z)."""
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        for j in range(g):
            rows[i][j] = a[i][j]
            rows[g + i][g + j] = a_inv_t[i][j]
    return tuple(tuple(r) for r in rows)


def _reduce_to_x(v: Vector, handles: Sequence[int]) -> Matrix:
    """Symplectic R fixing the handles outside ``handles`` with R v = x_{handles[0]}.

    ``v`` must be supported on ``handles`` and primitive there.
    """
    g = len(v) // 2
    r = identity(2 * g)
    w = v
    for i in handles:
        a, b = w[i], w[g + i]
        if a == 0 and b == 0:
            continue
        dd, s, t = _egcd(a, b)
        step = _handle_move(g, i, s, t, -b // dd, a // dd)
        r = mat_mul(step, r)
        w = mat_vec(step, w)
    # now w = sum d_i x_i over handles; clear all but the first with GL(g) moves
    lead = handles[0]
    for i in handles[1:]:
        a, b = w[lead], w[i]
        if b == 0:
            continue
        dd, s, t = _egcd(a, b)
        e = [[1 if p == q else 0 for q in range(g)] for p in range(g)]
        e_inv_t = [row[:] for row in e]
        # E = [[s, t], [-b/d, a/d]] on coordinates (lead, i); det 1
        p, q = -b // dd, a // dd
        e[lead][lead], e[lead][i], e[i][lead], e[i][i] = s, t, p, q
        # E^{-T} = [[q, -p], [-t, s]]
        e_inv_t[lead][lead], e_inv_t[lead][i] = q, -p
        e_inv_t[i][lead], e_inv_t[i][i] = -t, s
        step = _x_change(g, e, e_inv_t)
        r = mat_mul(step, r)
        w = mat_vec(step, w)
    if w[lead] == -1:
        step = _handle_move(g, lead, -1, 0, 0, -1)
        r = mat_mul(step, r)
        w = mat_vec(step, w)
    if w != basis_vector(g, f"x{lead + 1}"):
        raise ExtensionError(f"vector {v} is not primitive on handles {list(handles)}")
    return r


def _frame_single(v: Vector) -> Matrix:
    """Symplectic F with F x_1 = v."""
    g = len(v) // 2
    return symplectic_inverse(_reduce_to_x(v, range(g)))


def _frame_dual_pair(v: Vector, w: Vector) -> Matrix:
    """Symplectic F with F x_1 = v and F y_1 = w, assuming <v, w> = 1."""
    g = len(v) // 2
    r = _reduce_to_x(v, range(g))
    w1 = mat_vec(r, w)
    assert w1[g] == 1
    cols = [list(c) for c in identity(2 * g)]
    cols[g] = list(w1)
    for i in range(1, g):
        p, q = w1[i], w1[g + i]
        cols[i][0] = -q
        cols[g + i][0] = p
    n = from_columns(cols)
    return mat_mul(symplectic_inverse(r), n)


def _frame_isotropic_pair(v: Vector, w: Vector) -> Matrix:
    """Symplectic F with F x_1 = v and F x_2 = w, assuming <v, w> = 0."""
    g = len(v) // 2
    r1 = _reduce_to_x(v, range(g))
    w1 = mat_vec(r1, w)
    a = w1[0]
    rest = list(w1)
    rest[0] = 0
    rest = tuple(rest)
    if not is_primitive(rest):
        raise ExtensionError("isotropic pair does not span a primitive sublattice")
    r2 = _reduce_to_x(rest, range(1, g))
    w2 = mat_vec(r2, w1)
    shear = [[1 if p == q else 0 for q in range(g)] for p in range(g)]
    shear_inv_t = [row[:] for row in shear]
    shear[0][1] = -a
    shear_inv_t[1][0] = a
    r3 = _x_change(g, shear, shear_inv_t)
    r = mat_mul(r3, mat_mul(r2, r1))
    assert mat_vec(r, w) == basis_vector(g, "x2")
    return symplectic_inverse(r)


def symplectic_extension(
    constraints: Sequence[tuple[Sequence[int], Sequence[int], bool]],
) -> Matrix:
    """Find a symplectic integer matrix M with M s = t (or -t when flagged).

    ``constraints`` is a list of ``(source, target, sign_tolerant)``.  Up to
    two constraints are supported; the pair may have pairing 0 or +-1.
    """
    cons = [(tuple(s), tuple(t), bool(f)) for s, t, f in constraints]
    if not cons:
        raise ExtensionError("no constraints given")
    d = len(cons[0][0])
    for s, t, _ in cons:
        if len(s) != d or len(t) != d:
            raise LatticeError("dimension mismatch in constraints")
        if not is_primitive(s) or not is_primitive(t):
            raise ExtensionError(f"non-primitive class in constraint {s} -> {t}")
    if len(cons) == 1:
        (s, t, _), = cons
        m = mat_mul(_frame_single(t), symplectic_inverse(_frame_single(s)))
    elif len(cons) == 2:
        (s1, t1, f1), (s2, t2, f2) = cons
        p, q = pairing(s1, s2), pairing(t1, t2)
        if abs(p) != abs(q):
            raise ExtensionError(f"pairing mismatch: <s1,s2>={p}, <t1,t2>={q}")
        if p != q:
            if f2:
                t2 = neg(t2)
            elif f1:
                t1 = neg(t1)
            else:
                raise ExtensionError(f"pairing sign mismatch: {p} vs {q} and no sign freedom")
        if abs(p) == 1:
            fs = _frame_dual_pair(s1, tuple(p * a for a in s2))
            ft = _frame_dual_pair(t1, tuple(p * a for a in t2))
        elif p == 0:
            fs = _frame_isotropic_pair(s1, s2)
            ft = _frame_isotropic_pair(t1, t2)
        else:
            raise ExtensionError(f"unsupported pairing {p} between sources")
        m = mat_mul(ft, symplectic_inverse(fs))
        cons = [(s1, t1, False), (s2, t2, False)]
    else:
        raise ExtensionError("at most two constraints are supported")
    if not is_symplectic(m):  # pragma: no cover - construction guarantees this
        raise ExtensionError("internal error: result not symplectic")
    for s, t, flag in cons:
        img = mat_vec(m, s)
        if img != t and not (flag and img == neg(t)):
            raise ExtensionError(f"internal error: {s} maps to {img}, wanted {t}")
    return m
