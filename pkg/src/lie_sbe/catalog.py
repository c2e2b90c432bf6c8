"""Built-in library of named Lie algebra laws."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError
from .laws import LieLaw, law_from_table

# Quaternion basis units 1, i, j, k.  _UNIT_MUL[u][v] = (sign, unit) for u*v.
_UNIT_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _im_of_product_with_conj(u: int, v: int):
    """Imaginary part of u * conj(v) as {imaginary_unit: sign}."""
    sign = 1 if v == 0 else -1
    s, w = _UNIT_MUL[(u, v)]
    s *= sign
    return {} if w == 0 else {w: s}


def heintze_prototype(n: int, field: str) -> LieLaw:
    """The rank-one symmetric space solvable group law over R, C or H.

    Basis: the n-1 field coordinates (dim_R each), then the imaginary
    units T, then S.  Brackets: [z, z'] = Im(z conj(z')) in the T-part,
    [x, S] = -x on coordinates, [T, S] = -2T.
    """
    if n < 2:
        raise InputError("need n >= 2")
    kd = {"R": 1, "C": 2, "H": 4}.get(field)
    if kd is None:
        raise InputError("field must be R, C, or H")
    im = kd - 1
    nz = (n - 1) * kd
    dim = nz + im + 1
    s_idx = dim - 1

    def z_index(a: int, u: int) -> int:
        return a * kd + u

    table = {}
    for a in range(n - 1):
        for u in range(kd):
            for v in range(u + 1, kd):
                iu, iv = z_index(a, u), z_index(a, v)
                row = {}
                for w, s in _im_of_product_with_conj(u, v).items():
                    row[nz + (w - 1)] = Fraction(s)
                if row:
                    table[(iu, iv)] = row
    for x in range(nz):
        table[(x, s_idx)] = {x: Fraction(-1)}
    for m in range(im):
        table[(nz + m, s_idx)] = {nz + m: Fraction(-2)}

    labels = []
    if field == "R":
        labels = ["X%d" % (a + 1) for a in range(n - 1)]
    elif field == "C":
        for a in range(n - 1):
            labels += ["X%d" % (a + 1), "Y%d" % (a + 1)]
    else:
        labels = ["X%d" % (i + 1) for i in range(nz)]
    if im == 1:
        labels.append("T")
    else:
        labels += ["T%d" % (m + 1) for m in range(im)]
    labels.append("S")
    return LieLaw(dim, table, basis=tuple(labels))


def heisenberg(m: int) -> LieLaw:
    if m < 3 or m % 2 == 0:
        raise InputError("Heisenberg dimension must be odd and >= 3")
    k = (m - 1) // 2
    entries = {(a, k + a): {m: 1} for a in range(1, k + 1)}
    labels = ["X%d" % a for a in range(1, k + 1)] + ["Y%d" % a for a in range(1, k + 1)] + ["Z"]
    return law_from_table(m, entries, basis=tuple(labels))


def _l_4_3() -> LieLaw:
    return law_from_table(4, {(1, 2): {3: 1}, (1, 3): {4: 1}})


_L67_CORE = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}}


def _six_dim(extra) -> LieLaw:
    entries = {k: dict(v) for k, v in _L67_CORE.items()}
    for ij, t in extra.items():
        row = entries.setdefault(ij, {})
        for k, c in t.items():
            row[k] = row.get(k, 0) + c
    return law_from_table(6, entries)


def _s_prime() -> LieLaw:
    return law_from_table(
        4,
        {(1, 2): {3: 1}, (1, 4): {1: -1}, (2, 4): {1: -1, 2: -1}, (3, 4): {3: -2}},
        basis=("X", "Y", "Z", "A"),
    )


def _s_second() -> LieLaw:
    return law_from_table(
        4, {(1, 4): {1: -1}, (2, 4): {1: -1, 2: -1}, (3, 4): {3: -2}}
    )


def _h2c_solvable() -> LieLaw:
    return law_from_table(
        4,
        {(1, 2): {3: 1}, (1, 4): {1: -1}, (2, 4): {2: -1}, (3, 4): {3: -2}},
        basis=("X", "Y", "Z", "A"),
    )


def _aff() -> LieLaw:
    return law_from_table(2, {(1, 2): {1: -1}}, basis=("X", "T"))


_FIXED = {
    "l_4_3": _l_4_3,
    "l_6_6": lambda: _six_dim({(2, 3): {5: 1}}),
    "l_6_7": lambda: _six_dim({}),
    "l_6_11": lambda: _six_dim({(2, 3): {5: 1}, (2, 6): {5: 1}}),
    "l_6_12": lambda: _six_dim({(2, 6): {5: 1}}),
    "l_6_13": lambda: _six_dim({(2, 6): {4: 1}, (3, 6): {5: 1}}),
    "s_prime": _s_prime,
    "s_second": _s_second,
    "h2c_solvable": _h2c_solvable,
    "aff": _aff,
}

_DEFAULT_NAMES = (
    "b(2,R)", "b(3,R)", "b(4,R)",
    "b(2,C)", "b(3,C)", "b(4,C)",
    "b(2,H)",
    "heis(3)", "heis(5)",
    "l_4_3", "l_6_6", "l_6_7", "l_6_11", "l_6_12", "l_6_13",
    "s_prime", "s_second", "h2c_solvable", "aff",
)

_B_RE = re.compile(r"^b\((\d+),\s*([RCH])\)$")
_HEIS_RE = re.compile(r"^heis\((\d+)\)$")


def catalog(name: str) -> LieLaw:
    """Look up a named law; b(n,K) and heis(m) accept any valid parameters."""
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    m = _B_RE.match(name)
    if m:
        return heintze_prototype(int(m.group(1)), m.group(2))
    m = _HEIS_RE.match(name)
    if m:
        return heisenberg(int(m.group(1)))
    raise InputError(
        "unknown catalog name %r; known names: %s, plus b(n,K) and heis(m)"
        % (name, ", ".join(sorted(_FIXED)))
    )


def catalog_names() -> tuple:
    return _DEFAULT_NAMES
