"""Exact computations on finite lattices."""
from .congruences import (Congruence, all_congruences, is_subdirectly_irreducible,
                          principal_congruence, quotient)
from .core import (Lattice, boolean_lattice, chain, diamond, dual, find_isomorphism, from_covers,
                   is_isomorphic, m3, n5, product, sublattice_generated, vertical_sum)
from .covers import (Cover, classify_cover, collinear, minimal_join_covers,
                     minimal_join_representations, refine_to_minimal, refine_to_tight, refines)
from .enumeration import Catalog, enumerate_lattices, filter_catalog, lattices
from .errors import *  # noqa: F401,F403
from .io import dumps, loads, read_lattice, to_dot, write_lattice
from .kdfamily import build_KD, build_LD, gamma, principal_ideal_distributivity_profile, sdj2_witness
from .seeds import (SubJoinSemilattice, eval_relative, galois_pi_is_homomorphism, is_join_dense,
                    is_pre_seed, is_quasi_seed, is_seed, is_strongly_spatial, proj, span)
from .terms import (Verdict, evaluate, holds_identity, holds_inclusion, holds_sdj,
                    holds_sentence_1storder, is_distributive, is_join_semidistributive, is_modular,
                    is_n_distributive, is_n_distributive_by_covers, p_term, parse_term, refute)

__version__ = "0.1.0"
