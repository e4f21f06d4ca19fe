"""Exact lattice computations for prime-order automorphisms of complex 2-tori."""
from .action import (G6, H2Action, PositiveDimensionalFixedLocus, UnsupportedOrderError,
                     coinvariant_lattice, fixed_point_count, h2_order, invariant_lattice,
                     order_of, wedge_square)
from .catalog import (ExampleRecord, VerificationReport, get_example, list_examples,
                      quotient_transcendental, verify_all, verify_example)
from .classification import (ClassificationRow, bcms_condition, enumerate_table,
                             family_dimension, nikulin_2_exists, resolve_lattice, rs_p_exists)
from .lattice import (DiscriminantData, GenusFingerprint, Lattice, delta_invariant,
                      direct_sum, discriminant, genus_fingerprint, is_p_elementary,
                      isometry_search, lattice_from_name, make_named, orthogonal_complement,
                      rescale)
from .linalg import (IntMatrix, ShapeError, SingularError, SmithDecomposition, char_poly,
                     congruent_diagonalize, det, integer_kernel, smith_normal_form)

__version__ = "0.1.0"
