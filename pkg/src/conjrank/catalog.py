"""Builtin permutation groups and the default verification catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .perm_core import Permutation, close_generators

__all__ = [
    "cyclic", "symmetric", "alternating", "dihedral", "quaternion", "klein_four",
    "sl23", "builtin_group", "BUILTIN_FUSION", "CatalogEntry", "default_catalog",
    "builtin_names",
]


def _cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def cyclic(n):
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    gens = [_cyc(n, tuple(range(n)))] if n > 1 else []
    return close_generators(n, gens, name=f"C{n}")


def symmetric(n):
    gens = [_cyc(n, (0, 1)), _cyc(n, tuple(range(n)))] if n > 1 else []
    return close_generators(n, gens, name=f"S{n}")


def alternating(n):
    gens = [_cyc(n, (0, 1, 2))] + [_cyc(n, (0, 1, k)) for k in range(3, n)]
    return close_generators(n, gens, name=f"A{n}")


def dihedral(order):
    """Dihedral group of the given order acting on order/2 points."""
    n = order // 2
    if order % 2 or n < 3:
        raise ValueError("dihedral order must be even and at least 6")
    reflection = _cyc(n, *[(i, n - i) for i in range(1, (n + 1) // 2)])
    return close_generators(n, [_cyc(n, tuple(range(n))), reflection], name=f"D{order}")


def klein_four():
    return close_generators(4, [_cyc(4, (0, 1)), _cyc(4, (2, 3))], name="C2xC2")


def quaternion():
    """Q8 in its regular representation; points are 1, i, j, k, -1, -i, -j, -k."""
    # left multiplication by i and by j
    li = _cyc(8, (0, 1, 4, 5), (2, 3, 6, 7))
    lj = _cyc(8, (0, 2, 4, 6), (1, 7, 5, 3))
    return close_generators(8, [li, lj], name="Q8")


def sl23():
    """SL(2,3) acting on the 8 nonzero vectors of F_3^2."""
    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vectors)}

    def matrix_perm(m):
        (a, b), (c, d) = m
        return Permutation(tuple(pos[((a * x + b * y) % 3, (c * x + d * y) % 3)]
                                 for x, y in vectors))

    return close_generators(8, [matrix_perm(((1, 1), (0, 1))), matrix_perm(((0, 2), (1, 0)))],
                            name="SL(2,3)")


_FIXED = {
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "D8": lambda: dihedral(8),
    "D12": lambda: dihedral(12),
    "Q8": quaternion,
    "C2xC2": klein_four,
    "V4": klein_four,
    "SL23": sl23,
}

# builtin fusion systems: name -> (ambient builtin, prime)
BUILTIN_FUSION = {
    "F_C2(C2)": ("C2", 2),
    "F_C3(C3)": ("C3", 3),
    "F_D8(D8)": ("D8", 2),
    "F_C3(S3)": ("S3", 3),
    "F_D8(S4)": ("S4", 2),
    "F_Q8(SL23)": ("SL23", 2),
}


def builtin_names():
    return [f"C{n}" for n in range(1, 17)] + list(_FIXED)


def builtin_group(name):
    key = name.replace("×", "x").strip()
    m = re.fullmatch(r"C(\d+)", key)
    if m and 1 <= int(m.group(1)) <= 16:
        return cyclic(int(m.group(1)))
    if key in _FIXED:
        return _FIXED[key]()
    raise ParseError(f"unknown builtin group {name!r}")


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row.

    ``source`` is a builtin name or a file path.  ``params`` may hold
    ``sub`` (generator text), ``sylow`` (a prime) and ``biset`` (a path).
    """

    id: str
    kind: str
    source: str
    params: dict = field(default_factory=dict)
    theorems: tuple[str, ...] = ()


APPLICABLE = {"group": ("T1",), "fusion": ("T2", "T3", "T4"), "biset": ("T3",)}


def default_catalog():
    entries = []
    for n in range(1, 17):
        entries.append(CatalogEntry(f"C{n}", "group", f"C{n}"))
    for name in ("S3", "A4", "S4", "D8", "Q8", "C2xC2", "D12", "SL23"):
        entries.append(CatalogEntry(name, "group", name))
    entries.append(CatalogEntry("S3>C3", "group", "S3", {"sylow": 3}))
    entries.append(CatalogEntry("S4>D8", "group", "S4", {"sylow": 2}))
    for name, (ambient, p) in BUILTIN_FUSION.items():
        entries.append(CatalogEntry(name, "fusion", ambient, {"sylow": p}))
    return entries
