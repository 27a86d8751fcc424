"""Exact computations for one-sided shifts of finite type.

Matrices are immutable and hold Python ints, so every check is exact.
"""
from .conjugacy import (PermWitness, canonical_form, canonical_key, conjugate_higher_powers,
                        joint_permutation_equivalent, one_sided_conjugate, permutation_equivalent)
from .dimension import (BowenFranksData, DimElement, bf_induced_map, bowen_franks,
                        check_commuting_square, dim_elem_equal, induced_dim_map,
                        positivity_witness, theta_apply)
from .equivalence import (SeCertificate, UnitalVerdict, UnverifiedCertificate,
                          balanced_to_unital_se, boyle_pse_identity, sequence_certificate,
                          unital_condition, verify_se, verify_sl, verify_sl_plus)
from .graph import (ComponentPoset, is_canonical_form, is_irreducible, is_standard_form_pair,
                    row_col_profile, scc_poset)
from .matrix import DimensionError, IntMatrix, mat_mul, mat_pow
from .moves import (Move, MoveSequence, apply_outsplit, is_division_matrix, out_amalgamation_step,
                    total_amalgamation, verify_balanced_elementary, verify_insplit,
                    verify_move_sequence)
from .poly import IntPolynomial, char_poly
from .search import SearchLimits, SearchResult, neighbors, search_balanced_path
from .snf import SnfDecomposition, det_sign, determinant, smith_normal_form
from .textio import MatrixFormatError, format_matrix, parse_matrix

__version__ = "0.1.0"
