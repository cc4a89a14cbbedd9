"""Exact orbit-count matrices for finite groups and realized fusion systems.

The rank of the double-coset matrix (|P\\G/Q|) over conjugacy classes of
subgroups equals the number of conjugacy classes of cyclic subgroups; the
same holds over F-classes for fusion systems, characteristic bisets, and
any basis of the rational Burnside ring of F.  This package builds those
matrices exactly and checks the rank statements.
"""

from .biset import Biset, group_as_biset, orbit_matrix, verify_general_biset
from .burnside import (BurnsideElt, BurnsideRing, burnside_ring, coset_matrix, idempotents,
                       marks_table, rho, verify_theorem_group)
from .catalog import builtin_group
from .errors import (CapExceeded, ClassMismatch, ConjRankError, HypothesisFailed,
                     NotAPGroup, NotASubgroup, ParseError, Singular)
from .exact_linalg import RationalMatrix, integer_kernel_basis, rank
from .fusion import (FusionSystem, realize, stable_basis, theorem4_rank,
                     verify_theorem_fusion_group)
from .perm_core import (Group, Permutation, SubgroupClass, classes_under_ambient,
                        close_generators, double_coset_count, enumerate_subgroup_classes,
                        is_cyclic, normalizer, sylow_subgroup)

__version__ = "0.1.0"
