"""The rational Burnside ring of a finite group, in coordinates.

An element of Q B(G) is a coefficient vector over the transitive G-sets
``[G/P]`` (one per conjugacy class of subgroups).  Its *marks* are the
fixed-point counts ``|X^P|``; the mark map is a ring isomorphism onto
pointwise arithmetic, so products and idempotents are computed on marks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import perm_core as pc
from .errors import ClassMismatch, NotASubgroup
from .exact_linalg import RationalMatrix, rank, solve_unitriangular

__all__ = [
    "BurnsideRing", "BurnsideElt", "MarksTable", "GroupReport", "burnside_ring",
    "marks_table", "mark", "idempotents", "multiply", "rho", "coset_matrix",
    "idempotent_orbit_matrix", "verify_theorem_group", "fixed_cosets", "class_label",
]


def fixed_cosets(G, P, Q):
    """|(G/Q)^P|: cosets gQ with P <= gQg^-1, i.e. g^-1 P g <= Q."""
    gens = P.generators or P.elements
    members = Q.element_set
    count = sum(1 for g in G.elements
                if all(g.inverse() * u * g in members for u in gens))
    return count // Q.order


@dataclass(frozen=True, eq=False)
class MarksTable:
    """``M[i][j] = |(G/Q_j)^{P_i}|`` over the sorted classes of G."""

    classes: tuple[pc.SubgroupClass, ...]
    M: RationalMatrix


class BurnsideRing:
    """Q B(G) with its class list, table of marks and cached idempotents."""

    def __init__(self, G):
        self.group = G
        self.classes = tuple(pc.enumerate_subgroup_classes(G))
        self._lookup = pc.class_index_map(self.classes)

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"BurnsideRing({self.group.label()}, rank={len(self.classes)})"

    def label(self, i):
        return class_label(self.classes[i].representative, self.group)

    def class_of(self, P):
        """Index of the class containing the subgroup P."""
        try:
            return self._lookup[P.element_set]
        except KeyError:
            raise NotASubgroup(f"{P.label()} is not a subgroup of {self.group.label()}") from None

    def index_of(self, P):
        if isinstance(P, int):
            if not 0 <= P < len(self.classes):
                raise ClassMismatch(f"class index {P} out of range")
            return P
        if isinstance(P, pc.SubgroupClass):
            if P.representative.element_set not in self._lookup:
                raise ClassMismatch("class does not belong to this group")
            return self.class_of(P.representative)
        return self.class_of(P)

    @cached_property
    def table(self):
        G = self.group
        reps = [c.representative for c in self.classes]
        n = len(reps)
        rows = [[0] * n for _ in range(n)]
        for i, P in enumerate(reps):
            for j, Q in enumerate(reps):
                # nonzero only if P is subconjugate to Q
                if Q.order % P.order == 0 and Q.order >= P.order:
                    rows[i][j] = fixed_cosets(G, P, Q)
        labels = tuple(self.label(i) for i in range(n))
        return MarksTable(self.classes, RationalMatrix.from_rows(rows, labels, labels))

    @cached_property
    def _mark_rows(self):
        return self.table.M.tolist()

    def element(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != len(self.classes):
            raise ClassMismatch("coefficient vector has the wrong length")
        return BurnsideElt(self, coeffs)

    def basis(self, P):
        """The transitive G-set [G/P]."""
        i = self.index_of(P)
        return self.element([int(j == i) for j in range(len(self.classes))])

    def one(self):
        return self.basis(len(self.classes) - 1)

    def zero(self):
        return self.element([0] * len(self.classes))

    def from_marks(self, marks):
        coeffs = solve_unitriangular(self._mark_rows, [Fraction(m) for m in marks])
        return BurnsideElt(self, tuple(coeffs))

    def from_gset(self, stabilizers):
        """Class of the G-set with one orbit per listed point stabilizer."""
        counts = [0] * len(self.classes)
        for H in stabilizers:
            counts[self.class_of(H)] += 1
        return self.element(counts)

    @cached_property
    def idempotents(self):
        n = len(self.classes)
        return tuple(self.from_marks([int(i == j) for j in range(n)]) for i in range(n))

    @cached_property
    def _cyclic_class_of_elements(self):
        """For each element u of G, the class index of <u>."""
        out = {}
        for u in self.group.elements:
            C = pc.close_generators(self.group.degree, [u])
            out[u] = self.class_of(C)
        return out

    def rho(self, P, x):
        """Number of P-orbits, by averaging marks of <u> over u in P."""
        if x.ring is not self:
            raise ClassMismatch("element belongs to another Burnside ring")
        if isinstance(P, (int, pc.SubgroupClass)):
            P = self.classes[self.index_of(P)].representative
        if not pc.is_subgroup(self.group, P):
            raise NotASubgroup(f"{P.label()} is not a subgroup of {self.group.label()}")
        which = self._cyclic_class_of_elements
        marks = x.marks
        return sum((marks[which[u]] for u in P.elements), Fraction(0)) / P.order


@dataclass(frozen=True, eq=False)
class BurnsideElt:
    """An element of Q B(G): coefficients over the basis [G/P]."""

    ring: BurnsideRing
    coeffs: tuple[Fraction, ...]

    @property
    def group(self):
        return self.ring.group

    @cached_property
    def marks(self):
        rows = self.ring._mark_rows
        return tuple(sum((r[j] * c for j, c in enumerate(self.coeffs) if c), Fraction(0))
                     for r in rows)

    def _check(self, other):
        if not isinstance(other, BurnsideElt) or other.ring is not self.ring:
            raise ClassMismatch("elements live in different Burnside rings")

    def __add__(self, other):
        self._check(other)
        return BurnsideElt(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return BurnsideElt(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BurnsideElt(self.ring, tuple(-a for a in self.coeffs))

    def scale(self, q):
        return BurnsideElt(self.ring, tuple(Fraction(q) * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BurnsideElt):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, BurnsideElt):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self):
        G = self.ring.group.label()
        terms = []
        for c, cls in zip(self.coeffs, self.ring.classes):
            if not c:
                continue
            name = f"[{G}/{class_label(cls.representative, self.ring.group)}]"
            if c == 1:
                terms.append(name)
            elif c == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"BurnsideElt({self})"


def class_label(P, top):
    """Label of a class representative; the top group prints under its own name."""
    return top.label() if P == top else P.label()


@lru_cache(maxsize=64)
def _ring(G, label):
    return BurnsideRing(G)


def burnside_ring(G):
    # equal groups may carry different names; keep printed labels faithful
    return _ring(G, G.label())


def marks_table(G):
    return burnside_ring(G).table


def mark(x, P):
    """chi_P(x) for a subgroup, class, or class index P."""
    return x.marks[x.ring.index_of(P)]


def idempotents(G):
    """Primitive idempotents e_P of Q B(G), in class order."""
    return list(burnside_ring(G).idempotents)


def multiply(x, y):
    x._check(y)
    return x.ring.from_marks([a * b for a, b in zip(x.marks, y.marks)])


def rho(P, x):
    return x.ring.rho(P, x)


def coset_matrix(G, H):
    """(|P\\G/Q|) over G-classes of subgroups of H."""
    classes = pc.classes_under_ambient(G, H)
    reps = [c.representative for c in classes]
    rows = [[pc.double_coset_count(G, P, Q) for Q in reps] for P in reps]
    labels = tuple(class_label(P, H) for P in reps)
    return RationalMatrix.from_rows(rows, labels, labels), classes


def idempotent_orbit_matrix(G, H=None):
    """(rho_P(e_Q)) over G-classes of subgroups of H (default H = G)."""
    ring = burnside_ring(G)
    H = G if H is None else H
    classes = pc.classes_under_ambient(G, H)
    idx = [ring.class_of(c.representative) for c in classes]
    es = ring.idempotents
    rows = [[ring.rho(ring.classes[i].representative, es[j]) for j in idx] for i in idx]
    labels = tuple(class_label(c.representative, H) for c in classes)
    return RationalMatrix.from_rows(rows, labels, labels), classes


@dataclass(frozen=True)
class GroupReport:
    rank: int
    cyclic_classes: int
    holds: bool
    matrix: RationalMatrix
    classes: tuple = ()


def verify_theorem_group(G, H=None):
    """Compare the rank of the double-coset matrix with the cyclic class count."""
    H = G if H is None else H
    M, classes = coset_matrix(G, H)
    r = rank(M)
    cyc = sum(1 for c in classes if c.is_cyclic)
    return GroupReport(r, cyc, r == cyc, M, tuple(classes))
