"""Finite (S,S)-bisets stored as point sets with two commuting actions.

A biset is also a left S x S-set via ``(s, t) . w = s . w . t^-1``; orbit
stabilizers of that action are compared with twisted diagonals
``Delta(P, phi) = {(u, phi(u)) : u in P}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from . import perm_core as pc
from .burnside import burnside_ring, class_label
from .errors import BisetIndexError, ClassMismatch, HypothesisFailed
from .exact_linalg import RationalMatrix, rank
from .fusion import is_basis_of_bf, is_f_subconjugate, realize

log = logging.getLogger(__name__)

__all__ = [
    "Biset", "OrbitType", "group_as_biset", "free_biset", "trivial_biset",
    "orbit_types", "is_f_generated", "is_f_stable", "f_stability",
    "is_characteristic", "contains_S", "quotient_marks_nonzero", "right_quotient",
    "orbit_matrix", "verify_general_biset", "CharacteristicReport", "BisetReport",
]


def _compose(f, g):
    """f after g, on image tuples."""
    return tuple(f[i] for i in g)


def _extend(S, gen_images, ident, step):
    """Images of every element of S, given images of the generators.

    Each edge x -> step(x, s) is checked, so an inconsistent assignment
    (not a homomorphism) is rejected.
    """
    table = {S.identity: ident}
    queue = [S.identity]
    for x in queue:
        for s, img in zip(S.generators, gen_images):
            y = step(x, s)
            value = _compose(img, table[x])
            if y in table:
                if table[y] != value:
                    raise ValueError("generator images do not define an action of S")
            else:
                table[y] = value
                queue.append(y)
    return table


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union_map(self, m):
        for x, y in enumerate(m):
            a, b = self.find(x), self.find(y)
            if a != b:
                self.parent[a] = b

    def roots(self):
        return sorted({self.find(x) for x in range(len(self.parent))})


@dataclass(frozen=True, eq=False)
class Biset:
    """An (S,S)-biset on points ``0..size-1``.

    ``left[s]`` holds the images of ``w -> s.w`` and ``right[t]`` those of
    ``w -> w.t``, for every element of S.
    """

    S: pc.Group
    size: int
    left: dict
    right: dict
    name: str | None = None

    @classmethod
    def from_generators(cls, S, size, left_gens, right_gens, name=None):
        """Extend actions given on ``S.generators`` to all of S, checking them."""
        gens = S.generators
        if len(left_gens) != len(gens) or len(right_gens) != len(gens):
            raise ValueError(f"need one left and one right permutation per generator of S "
                             f"({len(gens)})")
        ident = tuple(range(size))
        lg = [tuple(p) for p in left_gens]
        rg = [tuple(p) for p in right_gens]
        for p in lg + rg:
            if sorted(p) != list(ident):
                raise ValueError(f"not a permutation of {size} points: {p}")
        left = _extend(S, lg, ident, lambda x, s: s * x)
        right = _extend(S, rg, ident, lambda x, s: x * s)
        for ls in lg:
            for rs in rg:
                if _compose(ls, rs) != _compose(rs, ls):
                    raise ValueError("left and right actions do not commute")
        return cls(S, size, left, right, name)

    def __repr__(self):
        label = self.name or "biset"
        return f"Biset({label}, S={self.S.label()}, size={self.size})"

    @cached_property
    def product_group(self):
        return pc.direct_product(self.S, self.S)

    def act(self, x, w):
        """(s, t) . w = s . w . t^-1 for x = (s, t) in the product group."""
        s, t = pc.split_pair(x, self.S.degree)
        return self.left[s][self.right[t.inverse()][w]]

    def fixed_points(self, pairs):
        """Number of points fixed by every (s, t) in ``pairs``."""
        maps = [_compose(self.left[s], self.right[t.inverse()]) for s, t in pairs]
        return sum(1 for w in range(self.size) if all(m[w] == w for m in maps))

    def generator_maps(self):
        SS = self.product_group
        d = self.S.degree
        out = []
        for x in SS.generators:
            s, t = pc.split_pair(x, d)
            out.append(_compose(self.left[s], self.right[t.inverse()]))
        return out


def group_as_biset(G, S):
    """G with S acting by left and right multiplication."""
    pc._require_subgroup(G, S)
    left = {s: tuple(G.left_map(s)) for s in S.elements}
    right = {t: tuple(G.right_map(t)) for t in S.elements}
    return Biset(S, G.order, left, right, name=G.label())


def free_biset(S):
    """S x S with s.(a, b).t = (s a, b t); every stabilizer is trivial."""
    n = S.order
    idx = S.index
    els = S.elements
    points = [(a, b) for a in range(n) for b in range(n)]
    pos = {p: i for i, p in enumerate(points)}
    left = {s: tuple(pos[(idx[s * els[a]], b)] for a, b in points) for s in els}
    right = {t: tuple(pos[(a, idx[els[b] * t])] for a, b in points) for t in els}
    return Biset(S, n * n, left, right, name="free")


def trivial_biset(S, copies=1):
    """``copies`` points with trivial actions; stabilizer S x S."""
    ident = tuple(range(copies))
    return Biset(S, copies, {s: ident for s in S.elements},
                 {t: ident for t in S.elements}, name="trivial")


@dataclass(frozen=True, eq=False)
class OrbitType:
    """An S x S orbit type: stabilizer, multiplicity and twisted-diagonal data.

    ``twisted_diagonal`` is ``(P, phi)`` with ``phi`` a dict on elements of P
    when the stabilizer meets both ``1 x S`` and ``S x 1`` trivially.
    """

    stabilizer: pc.Group
    multiplicity: int
    twisted_diagonal: tuple | None

    @property
    def is_twisted_diagonal(self):
        return self.twisted_diagonal is not None


def _twisted_data(K, S):
    d = S.degree
    P_elems = []
    phi = {}
    for x in K.elements:
        a, b = pc.split_pair(x, d)
        if a.is_identity() != b.is_identity():
            return None
        P_elems.append(a)
        phi[a] = b
    return pc._from_elements(d, P_elems), phi


def _stabilizer(omega, w):
    SS = omega.product_group
    return pc._from_elements(SS.degree, [x for x in SS.elements if omega.act(x, w) == w])


def _conjugate_in(G, K, L):
    if K.order != L.order:
        return False
    gens = K.generators or K.elements
    target = L.element_set
    for g in G.elements:
        gi = g.inverse()
        if all(g * k * gi in target for k in gens):
            return True
    return False


def orbit_types(omega):
    """Orbit types of the S x S action, merged up to S x S conjugacy."""
    uf = _UnionFind(omega.size)
    for m in omega.generator_maps():
        uf.union_map(m)
    SS = omega.product_group
    stabs = []
    counts = []
    for w in uf.roots():
        K = _stabilizer(omega, w)
        for i, L in enumerate(stabs):
            if _conjugate_in(SS, K, L):
                counts[i] += 1
                break
        else:
            stabs.append(K)
            counts.append(1)
    return [OrbitType(K, c, _twisted_data(K, omega.S)) for K, c in zip(stabs, counts)]


def _realized_by_conjugation(G, phi):
    pairs = list(phi.items())
    for g in G.elements:
        gi = g.inverse()
        if all(g * u * gi == v for u, v in pairs):
            return True
    return False


def _check_same_S(omega, F):
    if omega.S != F.S:
        raise ClassMismatch("biset and fusion system are over different groups S")


def is_f_generated(omega, F):
    """Every stabilizer is some Delta(P, phi) with phi conjugation in G."""
    _check_same_S(omega, F)
    for t in orbit_types(omega):
        if t.twisted_diagonal is None:
            return False
        if not _realized_by_conjugation(F.ambient, t.twisted_diagonal[1]):
            return False
    return True


def _full_stability(omega, F):
    S, G = F.S, F.ambient
    SS = pc.direct_product(S, S)
    GG = pc.direct_product(G, G)
    FF = realize(GG, SS, F.p)
    d = S.degree
    marks = []
    for c in FF.s_classes:
        K = c.representative
        pairs = [pc.split_pair(x, d) for x in (K.generators or K.elements)]
        marks.append(omega.fixed_points(pairs))
    return all(len({marks[i] for i in block}) == 1 for block in FF.f_partition)


def _partial_stability(omega, F):
    S, G = F.S, F.ambient
    members = S.element_set
    for block in F.f_partition:
        seen = set()
        for i in block:
            P = F.s_classes[i].representative
            gens = P.generators or P.elements
            for g in G.elements:
                gi = g.inverse()
                images = [g * u * gi for u in gens]
                if all(v in members for v in images):
                    seen.add(omega.fixed_points(list(zip(gens, images))))
                    if len(seen) > 1:
                        return False
    return True


def f_stability(omega, F, mode="auto"):
    """Return ``(stable, mode_used)``.

    ``"full"`` compares marks on all subgroups of S x S fused by G x G;
    ``"partial"`` only on twisted diagonals, a necessary condition.
    ``"auto"`` picks full when |S| is within ``CAPS.biset_order``.
    """
    _check_same_S(omega, F)
    if mode == "auto":
        mode = "full" if F.S.order <= pc.CAPS.biset_order else "partial"
    if mode == "full":
        return _full_stability(omega, F), "full"
    if mode == "partial":
        return _partial_stability(omega, F), "partial"
    raise ValueError(f"unknown stability mode {mode!r}")


def is_f_stable(omega, F, mode="auto"):
    return f_stability(omega, F, mode)[0]


def right_quotient(omega, P):
    """The left S-set of right P-orbits, as an element of B(S)."""
    S = omega.S
    pc._require_subgroup(S, P)
    uf = _UnionFind(omega.size)
    for t in P.generators:
        uf.union_map(omega.right[t])
    orbits = uf.roots()
    # left S action on the right P-orbits
    seen = set()
    stabilizers = []
    for w in orbits:
        if w in seen:
            continue
        stab = []
        for s in S.elements:
            image = uf.find(omega.left[s][w])
            seen.add(image)
            if image == w:
                stab.append(s)
        stabilizers.append(pc._from_elements(S.degree, stab))
    return burnside_ring(S).from_gset(stabilizers)


def quotient_marks_nonzero(omega):
    """chi_P(Omega/P) != 0 for every subgroup class P of S."""
    ring = burnside_ring(omega.S)
    for i, c in enumerate(ring.classes):
        if right_quotient(omega, c.representative).marks[i] == 0:
            return False
    return True


def contains_S(omega, F):
    """Some orbit is isomorphic to S twisted by an F-automorphism of S."""
    _check_same_S(omega, F)
    found = False
    for t in orbit_types(omega):
        td = t.twisted_diagonal
        if td is not None and td[0].order == F.S.order \
                and _realized_by_conjugation(F.ambient, td[1]):
            found = True
            break
    if omega.size and found != quotient_marks_nonzero(omega):
        log.warning("contains_S=%s disagrees with the quotient-mark criterion for %r",
                    found, omega)
    return found


@dataclass(frozen=True)
class CharacteristicReport:
    f_stable: bool
    f_generated: bool
    index_coprime: bool
    holds: bool
    stability_mode: str = "full"


def is_characteristic(omega, F, mode="auto"):
    if omega.size % F.S.order:
        raise BisetIndexError(f"|S| = {F.S.order} does not divide |Omega| = {omega.size}")
    stable, used = f_stability(omega, F, mode)
    generated = is_f_generated(omega, F)
    coprime = (omega.size // F.S.order) % F.p != 0
    return CharacteristicReport(stable, generated, coprime, stable and generated and coprime, used)


def orbit_matrix(omega, F):
    """(|P\\Omega/Q|) over F-class representatives, by direct orbit count."""
    _check_same_S(omega, F)
    reps = [c.representative for c in F.f_classes]
    rows = []
    for P in reps:
        row = []
        for Q in reps:
            uf = _UnionFind(omega.size)
            for s in P.generators:
                uf.union_map(omega.left[s])
            for t in Q.generators:
                uf.union_map(omega.right[t])
            row.append(len(uf.roots()))
        rows.append(row)
    labels = tuple(class_label(P, F.S) for P in reps)
    return RationalMatrix.from_rows(rows, labels, labels)


@dataclass(frozen=True)
class BisetReport:
    f_stable: bool
    f_generated: bool
    contains_s: bool
    stability_mode: str
    support_ok: bool           # chi_Q([Omega/P]) != 0 only if Q <=_F P
    normalizer_bound_ok: bool  # chi_P([Omega/P]) >= |N_S(P)/P|
    quotient_basis_ok: bool    # {[Omega/P]} is a basis of Q B(F)
    rank: int
    cyclic_f_classes: int
    holds: bool
    matrix: RationalMatrix
    quotient_marks: RationalMatrix


def verify_general_biset(omega, F, mode="auto"):
    """Check the hypotheses on Omega, the facts used about [Omega/P], and the rank."""
    stable, used = f_stability(omega, F, mode)
    if not stable:
        raise HypothesisFailed("f_stable", f"{omega!r} is not F-stable ({used} check)")
    if not is_f_generated(omega, F):
        raise HypothesisFailed("f_generated", f"{omega!r} is not F-generated")
    if not contains_S(omega, F):
        raise HypothesisFailed("contains_S", f"{omega!r} does not contain the biset S")

    ring = burnside_ring(F.S)
    S = F.S
    reps = [c.representative for c in F.f_classes]
    quotients = [right_quotient(omega, P) for P in reps]
    support_ok = True
    bound_ok = True
    for P, q in zip(reps, quotients):
        for j, c in enumerate(ring.classes):
            if q.marks[j] != 0 and not is_f_subconjugate(F, c.representative, P):
                support_ok = False
        own = q.marks[ring.class_of(P)]
        if own < pc.normalizer(S, P).order // P.order:
            bound_ok = False
    basis_ok = is_basis_of_bf(F, quotients)
    M = orbit_matrix(omega, F)
    r = rank(M)
    cyc = sum(1 for c in F.f_classes if c.is_cyclic)
    idx = [ring.class_of(P) for P in reps]
    qm = RationalMatrix.from_rows([[q.marks[i] for q in quotients] for i in idx])
    holds = support_ok and bound_ok and basis_ok and r == cyc
    return BisetReport(stable, True, True, used, support_ok, bound_ok, basis_ok,
                       r, cyc, holds, M, qm)
