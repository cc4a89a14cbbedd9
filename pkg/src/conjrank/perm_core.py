"""Permutations, permutation groups and subgroups up to conjugacy.

Groups are small enough (a few thousand elements at most) that every group
is stored as its full, canonically sorted element list.  Heavier routines
work on element *indices* into that list, with a lazily built
multiplication table.
"""

from __future__ import annotations

import logging
import os
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import lcm
from typing import Iterable, Sequence

from .errors import CapExceeded, DegreeMismatch, NotAPGroup, NotASubgroup, ParseError

__all__ = [
    "Caps", "CAPS", "set_caps", "caps_from_env", "Permutation", "Group", "SubgroupClass",
    "close_generators", "enumerate_subgroup_classes", "classes_under_ambient",
    "double_coset_count", "is_cyclic", "normalizer", "is_subgroup",
    "is_subconjugate", "conjugate", "class_index_map", "sylow_subgroup",
    "is_p_group", "direct_product", "parse_cycles",
]


@dataclass
class Caps:
    order: int = 5000
    subgroups: int = 20000
    # largest |S| for which F x F stability enumerates subgroups of S x S
    biset_order: int = 16


CAPS = Caps()


def set_caps(order=None, subgroups=None, biset_order=None):
    if order is not None:
        CAPS.order = int(order)
    if subgroups is not None:
        CAPS.subgroups = int(subgroups)
    if biset_order is not None:
        CAPS.biset_order = int(biset_order)
    _subgroup_classes.cache_clear()


def caps_from_env():
    """Apply ``CONJRANK_CAPS`` (e.g. ``order=2000,subgroups=500``)."""
    raw = os.environ.get("CONJRANK_CAPS")
    if not raw:
        return
    values = {}
    for item in re.split(r"[,;\s]+", raw.strip()):
        if not item:
            continue
        key, _, val = item.partition("=")
        if key not in ("order", "subgroups", "biset_order") or not val.isdigit():
            raise ParseError(f"bad CONJRANK_CAPS item {item!r}")
        values[key] = int(val)
    set_caps(**values)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` given by its image list.

    Products compose right to left: ``(g * h)(i) == g(h(i))``.  The ordering
    is lexicographic on ``images``, which fixes the canonical element order
    of every group.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _raw(cls, images):
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles: Iterable[Sequence[int]]):
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                seen.add(a)
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls._raw(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise DegreeMismatch("cannot compose permutations of different degree")
        mine = self.images
        return Permutation._raw(tuple(mine[i] for i in other.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self):
        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({str(self)!r}, degree={self.degree})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse cycle notation such as ``(0 1)(2 3)``; ``()`` is the identity."""
    text = text.strip()
    leftover = _CYCLE.sub("", text).strip()
    if leftover:
        raise ParseError(f"unexpected text {leftover!r} in cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        parts = body.replace(",", " ").split()
        if not parts:
            continue
        try:
            cycles.append([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
    try:
        return Permutation.from_cycles(degree, cycles)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

_TABLE_LIMIT = 1024


@dataclass(frozen=True, eq=False)
class Group:
    """A finite permutation group, stored with its full sorted element list.

    Build groups with :func:`close_generators`; the constructor trusts its
    arguments.  Equality is equality of element sets.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    name: str | None = field(default=None, compare=False)

    @cached_property
    def element_set(self):
        return frozenset(self.elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return self.elements[0]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self):
        return hash(self.element_set)

    def __repr__(self):
        label = self.name or "<" + ", ".join(map(str, self.generators)) + ">"
        return f"Group({label}, order={self.order})"

    def label(self):
        if self.name:
            return self.name
        if not self.generators:
            return "1"
        return "<" + ", ".join(map(str, self.generators)) + ">"

    def subgroup(self, gens, name=None):
        gens = list(gens)
        for g in gens:
            if g not in self:
                raise NotASubgroup(f"{g} is not an element of {self.label()}")
        return close_generators(self.degree, gens, name=name)

    # -- index arithmetic ---------------------------------------------------

    @cached_property
    def index(self):
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def _table(self):
        if self.order > _TABLE_LIMIT:
            return None
        idx = self.index
        els = self.elements
        return [[idx[a * b] for b in els] for a in els]

    def mul(self, i, j):
        table = self._table
        if table is not None:
            return table[i][j]
        return self.index[self.elements[i] * self.elements[j]]

    def left_map(self, g):
        """Index permutation induced by x -> g*x."""
        idx = self.index
        return [idx[g * x] for x in self.elements]

    def right_map(self, g):
        """Index permutation induced by x -> x*g."""
        idx = self.index
        return [idx[x * g] for x in self.elements]

    def conj_map(self, g):
        """Index permutation induced by x -> g*x*g^-1."""
        idx = self.index
        gi = g.inverse()
        return [idx[g * x * gi] for x in self.elements]

    def indices_of(self, H):
        idx = self.index
        try:
            return frozenset(idx[h] for h in H.elements)
        except KeyError:
            raise NotASubgroup(f"{H.label()} is not contained in {self.label()}") from None


def close_generators(degree, gens, cap=None, name=None):
    """Return the group generated by ``gens`` as a full element list."""
    cap = CAPS.order if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = tuple(gens)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    nontrivial = [g for g in gens if not g.is_identity()]
    while queue:
        x = queue.popleft()
        for g in nontrivial:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(y)
    return Group(degree, gens, tuple(sorted(seen)), name)


def _from_elements(degree, elements, name=None):
    """Wrap a known closed element set, choosing a greedy generating set."""
    elements = tuple(sorted(elements))
    gens = []
    span = {Permutation.identity(degree)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(close_generators(degree, gens, cap=len(elements)).elements)
    return Group(degree, tuple(gens), elements, name)


def is_subgroup(G, H):
    return H.degree == G.degree and H.element_set <= G.element_set


def _require_subgroup(G, *subs):
    for H in subs:
        if not is_subgroup(G, H):
            raise NotASubgroup(f"{H.label()} is not a subgroup of {G.label()}")


def is_cyclic(P):
    n = P.order
    return any(g.order() == n for g in P.elements)


def normalizer(G, P):
    _require_subgroup(G, P)
    gens = P.generators or P.elements
    members = P.element_set
    keep = [g for g in G.elements
            if all(g * p * g.inverse() in members for p in gens)]
    return _from_elements(G.degree, keep)


def conjugate(P, g):
    """The subgroup g P g^-1."""
    gi = g.inverse()
    return Group(P.degree, tuple(g * x * gi for x in P.generators),
                 tuple(sorted(g * x * gi for x in P.elements)))


def is_subconjugate(G, Q, P):
    """True iff g Q g^-1 <= P for some g in G."""
    if P.order % Q.order:
        return False
    gens = Q.generators or Q.elements
    members = P.element_set
    for g in G.elements:
        gi = g.inverse()
        if all(g * q * gi in members for q in gens):
            return True
    return False


def double_coset_count(G, P, Q):
    """Number of double cosets P g Q, counted as orbits of P x Q on G."""
    _require_subgroup(G, P, Q)
    n = G.order
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    maps = [G.left_map(p) for p in P.generators]
    maps += [G.right_map(q) for q in Q.generators]
    for m in maps:
        for x in range(n):
            a, b = find(x), find(m[x])
            if a != b:
                parent[a] = b
    return sum(1 for x in range(n) if find(x) == x)


def is_p_group(P, p):
    n = P.order
    while n % p == 0:
        n //= p
    return n == 1


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def sylow_subgroup(G, p):
    """A Sylow p-subgroup of G, grown one factor of p at a time.

    A p-subgroup P that is not Sylow has an element x in N_G(P) \\ P with
    x^p in P; the least such x (canonical order) is adjoined.
    """
    if not _is_prime(p):
        raise NotAPGroup(f"{p} is not a prime")
    target = 1
    n = G.order
    while n % p == 0:
        target *= p
        n //= p
    P = close_generators(G.degree, [])
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x not in P and x ** p in P:
                P = close_generators(G.degree, list(P.generators) + [x])
                break
        else:  # pragma: no cover - excluded by Sylow's theorems
            raise AssertionError("no p-element in N_G(P) / P")
    name = f"Syl{p}({G.name})" if G.name else None
    return Group(P.degree, P.generators, P.elements, name)


def direct_product(A, B, name=None):
    """A x B acting on ``A.degree + B.degree`` points (B shifted)."""
    da, db = A.degree, B.degree

    def pair(a, b):
        return Permutation._raw(a.images + tuple(da + i for i in b.images))

    ia, ib = A.identity, B.identity
    gens = [pair(a, ib) for a in A.generators] + [pair(ia, b) for b in B.generators]
    elements = tuple(sorted(pair(a, b) for a in A.elements for b in B.elements))
    return Group(da + db, tuple(gens), elements, name)


def split_pair(x, first_degree):
    """Inverse of the pairing used by :func:`direct_product`."""
    imgs = x.images
    a = Permutation._raw(imgs[:first_degree])
    b = Permutation._raw(tuple(i - first_degree for i in imgs[first_degree:]))
    return a, b


def make_pair(a, b):
    d = a.degree
    return Permutation._raw(a.images + tuple(d + i for i in b.images))


# ---------------------------------------------------------------------------
# Subgroup classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubgroupClass:
    """A conjugacy class of subgroups under conjugation by ``ambient``.

    ``members`` are sorted canonically and ``representative`` is the first.
    """

    representative: Group
    members: tuple[Group, ...]
    order: int
    is_cyclic: bool
    ambient: Group

    def __contains__(self, H):
        return H in self._member_set

    @cached_property
    def _member_set(self):
        return frozenset(self.members)

    def __repr__(self):
        kind = "cyclic" if self.is_cyclic else "noncyclic"
        return (f"SubgroupClass(order={self.order}, {kind}, size={len(self.members)}, "
                f"rep={self.representative.label()})")


def _closure_idx(G, gens):
    e = G.index[G.identity]
    seen = {e}
    queue = [e]
    for x in queue:
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _orbit_under_conj(conj_maps, start, start_gens):
    """Conjugates of an index-set subgroup, each with a generating tuple."""
    found = {start: start_gens}
    queue = [start]
    for K in queue:
        gens = found[K]
        for m in conj_maps:
            L = frozenset(m[i] for i in K)
            if L not in found:
                found[L] = tuple(m[i] for i in gens)
                queue.append(L)
    return found


def _to_group(G, K, gens):
    return Group(G.degree, tuple(G.elements[i] for i in gens),
                 tuple(G.elements[i] for i in sorted(K)))


def _make_class(G, orbit, ambient):
    members = sorted((_to_group(G, K, gens) for K, gens in orbit.items()),
                     key=lambda H: H.elements)
    rep = members[0]
    return SubgroupClass(rep, tuple(members), rep.order, is_cyclic(rep), ambient)


@lru_cache(maxsize=128)
def _subgroup_classes(G, cap_subgroups):
    n = G.order
    conj_maps = [G.conj_map(g) for g in G.generators]
    # one generator index per cyclic subgroup
    cyclic_gens = {}
    for i in range(n):
        C = _closure_idx(G, (i,))
        cyclic_gens.setdefault(C, i)
    cyclic = sorted(cyclic_gens.items(), key=lambda kv: (len(kv[0]), kv[1]))

    e = G.index[G.identity]
    trivial = frozenset({e})
    known = {}
    orbits = []

    def add(K, gens):
        orbit = _orbit_under_conj(conj_maps, K, gens)
        for L in orbit:
            known[L] = len(orbits)
        orbits.append(orbit)
        if len(orbits) > cap_subgroups:
            raise CapExceeded(f"more than {cap_subgroups} subgroup classes")

    add(trivial, ())
    queue = deque([(trivial, ())])
    while queue:
        A, gens = queue.popleft()
        for C, x in cyclic:
            if C <= A:
                continue
            new_gens = gens + (x,)
            K = _closure_idx(G, new_gens)
            if K not in known:
                add(K, new_gens)
                queue.append((K, new_gens))

    classes = [_make_class(G, orbit, G) for orbit in orbits]
    classes.sort(key=lambda c: (c.order, c.representative.elements))
    return tuple(classes)


def enumerate_subgroup_classes(G):
    """All conjugacy classes of subgroups of G, sorted by (order, representative)."""
    if G.order > CAPS.order:
        raise CapExceeded(f"|G| = {G.order} exceeds order cap {CAPS.order}")
    return list(_subgroup_classes(G, CAPS.subgroups))


def classes_under_ambient(G, H):
    """Classes of subgroups of H, two being fused when conjugate in G."""
    _require_subgroup(G, H)
    if H == G:
        return enumerate_subgroup_classes(G)
    if G.order > CAPS.order:
        raise CapExceeded(f"|G| = {G.order} exceeds order cap {CAPS.order}")
    conj_maps = [G.conj_map(g) for g in G.generators]
    subs = {}
    for cls in enumerate_subgroup_classes(H):
        for member in cls.members:
            subs[G.indices_of(member)] = tuple(G.index[g] for g in member.generators)
    done = set()
    classes = []
    for K, gens in subs.items():
        if K in done:
            continue
        orbit = _orbit_under_conj(conj_maps, K, gens)
        inside = {L: subs[L] for L in orbit if L in subs}
        done.update(inside)
        classes.append(_make_class(G, inside, G))
    classes.sort(key=lambda c: (c.order, c.representative.elements))
    return classes


def class_index_map(classes):
    """Map each member subgroup (by element set) to the index of its class."""
    return {H.element_set: i for i, cls in enumerate(classes) for H in cls.members}


try:
    caps_from_env()
except ParseError as _exc:
    logging.getLogger(__name__).warning("ignoring %s", _exc)
