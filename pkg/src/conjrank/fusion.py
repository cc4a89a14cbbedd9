"""Fusion systems F_S(G) realized by an ambient finite group.

Subgroups of S are F-conjugate when they are conjugate in G.  The Burnside
ring B(F) is the sublattice of B(S) whose marks are constant on F-classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from . import perm_core as pc
from .burnside import BurnsideElt, burnside_ring, class_label, coset_matrix
from .errors import ClassMismatch, NotAPGroup
from .exact_linalg import RationalMatrix, integer_kernel_basis, rank

__all__ = [
    "FusionSystem", "FusionReport", "realize", "f_idempotent", "f_idempotents",
    "is_f_stable", "stable_basis", "scaled_idempotent_basis", "orbit_matrix_for_basis",
    "theorem4_rank", "verify_theorem_fusion_group", "is_f_subconjugate",
    "change_of_basis_matrix", "is_basis_of_bf",
]


@dataclass(frozen=True, eq=False)
class FusionSystem:
    """Fusion data of S inside an ambient group G.

    ``f_classes`` are the G-classes of subgroups of S (the F-classes) and
    ``f_partition[k]`` lists the indices into ``s_classes`` that make up
    ``f_classes[k]``.
    """

    ambient: pc.Group
    S: pc.Group
    p: int
    s_classes: tuple[pc.SubgroupClass, ...]
    f_classes: tuple[pc.SubgroupClass, ...]
    f_partition: tuple[tuple[int, ...], ...]

    @cached_property
    def ring(self):
        return burnside_ring(self.S)

    @cached_property
    def f_class_of_s_class(self):
        out = [0] * len(self.s_classes)
        for k, block in enumerate(self.f_partition):
            for i in block:
                out[i] = k
        return tuple(out)

    def f_index_of(self, P):
        """F-class index of a subgroup of S, an F-class, or an index."""
        if isinstance(P, int):
            if not 0 <= P < len(self.f_classes):
                raise ClassMismatch(f"F-class index {P} out of range")
            return P
        if isinstance(P, pc.SubgroupClass):
            for k, c in enumerate(self.f_classes):
                if c is P or c.representative == P.representative:
                    return k
            raise ClassMismatch("class is not an F-class of this fusion system")
        return self.f_class_of_s_class[self.ring.class_of(P)]

    @property
    def is_trivial(self):
        return all(len(b) == 1 for b in self.f_partition)

    def __repr__(self):
        return (f"FusionSystem(S={self.S.label()} in {self.ambient.label()}, p={self.p}, "
                f"{len(self.s_classes)} S-classes, {len(self.f_classes)} F-classes)")


def realize(G, S, p):
    """The fusion system of G on its p-subgroup S."""
    pc._require_subgroup(G, S)
    if not pc._is_prime(p):
        raise NotAPGroup(f"{p} is not a prime")
    if not pc.is_p_group(S, p):
        raise NotAPGroup(f"|S| = {S.order} is not a power of {p}")
    ring = burnside_ring(S)
    f_classes = tuple(pc.classes_under_ambient(G, S))
    partition = []
    for fc in f_classes:
        block = sorted({ring.class_of(H) for H in fc.members})
        partition.append(tuple(block))
    return FusionSystem(G, S, p, ring.classes, f_classes, tuple(partition))


def is_f_subconjugate(F, Q, P):
    """Q <=_F P: some G-conjugate of Q lies in P."""
    return pc.is_subconjugate(F.ambient, Q, P)


def f_idempotent(F, P):
    """e^F_P, the sum of the S-idempotents over the S-classes in P's F-class."""
    k = F.f_index_of(P)
    es = F.ring.idempotents
    out = F.ring.zero()
    for i in F.f_partition[k]:
        out = out + es[i]
    return out


def f_idempotents(F):
    return [f_idempotent(F, k) for k in range(len(F.f_classes))]


def is_f_stable(F, x):
    """True iff the marks of x are constant on every F-class."""
    if x.ring is not F.ring:
        raise ClassMismatch("element is not in the Burnside ring of S")
    marks = x.marks
    return all(len({marks[i] for i in block}) == 1 for block in F.f_partition)


def _constraint_rows(F):
    rows = F.ring._mark_rows
    out = []
    for block in F.f_partition:
        first = block[0]
        for i in block[1:]:
            out.append([int(a - b) for a, b in zip(rows[i], rows[first])])
    return out


def stable_basis(F):
    """Integral basis of B(F) inside B(S), one element per F-class.

    The lattice is the integer kernel of the mark-difference constraints,
    put in Hermite form with coordinates ordered by decreasing subgroup
    order.  The pivot of each basis vector is the first S-class (in that
    order) of exactly one F-class, where the vector's mark is nonzero; the
    result is returned in F-class order.
    """
    ring = F.ring
    n = len(ring.classes)
    perm = list(range(n - 1, -1, -1))  # classes are sorted ascending
    A = [[row[j] for j in perm] for row in _constraint_rows(F)]
    kernel = integer_kernel_basis(A, ncols=n)
    if len(kernel) != len(F.f_classes):
        raise AssertionError(f"B(F) has rank {len(kernel)}, expected {len(F.f_classes)}")
    by_f = [None] * len(F.f_classes)
    for vec in kernel:
        pivot = next(j for j, v in enumerate(vec) if v)
        coeffs = [0] * n
        for j, v in enumerate(vec):
            coeffs[perm[j]] = v
        k = F.f_class_of_s_class[perm[pivot]]
        if by_f[k] is not None:
            raise AssertionError("two stable basis vectors share an F-class")
        by_f[k] = ring.element(coeffs)
    return by_f


def scaled_idempotent_basis(F):
    """The e^F_P scaled by the lcm of their denominators."""
    out = []
    for e in f_idempotents(F):
        d = lcm(1, *(c.denominator for c in e.coeffs))
        out.append(e.scale(d))
    return out


def orbit_matrix_for_basis(F, basis):
    """(rho_P(b_Q)) with rows over F-class representatives."""
    ring = F.ring
    reps = [c.representative for c in F.f_classes]
    rows = [[ring.rho(P, b) for b in basis] for P in reps]
    labels = tuple(class_label(P, F.S) for P in reps)
    return RationalMatrix.from_rows(rows, labels)


@dataclass(frozen=True)
class FusionReport:
    rank: int
    cyclic_f_classes: int
    holds: bool
    matrix: RationalMatrix
    basis: str = ""


def _cyclic_count(F):
    return sum(1 for c in F.f_classes if c.is_cyclic)


def theorem4_rank(F, basis="stable"):
    """Rank of (rho_P(b_Q)) for a basis {b_Q} of Q B(F).

    ``basis`` is ``"stable"``, ``"idempotent"``, or an explicit list of
    elements of B(S) (for instance the quotients [Omega/P] of a biset).
    Any basis of Q B(F) gives the same rank.
    """
    if basis == "stable":
        elts, name = stable_basis(F), "stable"
    elif basis == "idempotent":
        elts, name = scaled_idempotent_basis(F), "idempotent"
    else:
        elts, name = list(basis), "explicit"
        for b in elts:
            if not isinstance(b, BurnsideElt) or b.ring is not F.ring:
                raise ClassMismatch("basis elements must lie in B(S)")
    M = orbit_matrix_for_basis(F, elts)
    r = rank(M)
    cyc = _cyclic_count(F)
    return FusionReport(r, cyc, r == cyc, M, name)


def verify_theorem_fusion_group(F):
    """Rank of (|P\\G/Q|) over F-classes against the cyclic F-class count."""
    M, _ = coset_matrix(F.ambient, F.S)
    r = rank(M)
    cyc = _cyclic_count(F)
    return FusionReport(r, cyc, r == cyc, M, "group")


def change_of_basis_matrix(F, basis):
    """Coordinates of ``basis`` in the {e^F_P} basis: marks at F-class reps."""
    ring = F.ring
    idx = [ring.class_of(c.representative) for c in F.f_classes]
    return RationalMatrix.from_rows([[b.marks[i] for b in basis] for i in idx])


def is_basis_of_bf(F, basis):
    if len(basis) != len(F.f_classes):
        return False
    if not all(is_f_stable(F, b) for b in basis):
        return False
    return rank(change_of_basis_matrix(F, basis)) == len(basis)

