"""Stickelberger ideals of (Z/lZ)*, their projections, and class-number checks."""
from .class_numbers import (coprimality_lemma, h_forms, h_minus_maillet,
                            h_quadratic)
from .core import (StickelbergerData, fractional_multiple, ideal_lattice,
                   minus_index, projected_ideal, projected_index,
                   quadratic_image, theta)
from .cyclic import (PrimeContext, SubgroupSpec, make_context,
                     quadratic_character, subgroup_of_order)
from .group_ring import (RingElem, augmentation, minus_part_image, multiply,
                         project_pi_H, quotient_map_r)
from .lattice import (INFINITE, IntegerLattice, contains, hnf_from_generators,
                      index_in, intersect, smith_invariants)
from .leopoldt import (FiniteModule, annihilates, exponent_bound, induce,
                       is_leopoldt, make_module, projection_necessary_check)

__version__ = "0.1.0"
