"""Exact boundary representations of groups acting on truncated rooted trees."""
from .automata import Automaton, LevelAction, LevelStagedGenerator, State, materialize
from .chartab import (CharacterTable, DecompositionRecord, character_table, check_orthogonality,
                      decompose_action, local_decomposition)
from .families import (DefiningVector, dihedral_build, full_symmetric_wreath, ggs_build,
                       ggs_is_aperiodic, ggs_is_centered, ggs_prediction, gl_build,
                       s3_regular_wreath, wreath_build)
from .group import TreeGroup
from .kernels import BACKEND
from .perm import StabChain, schreier_sims
from .scheme import OrbitalScheme, build_scheme
from .transitivity import (boundary_gelfand, is_distance_transitive, is_locally_2_transitive,
                           is_spherically_transitive, local_gelfand, rank_identity_check)
from .tree import ROOT, TreeShape, Vertex
from .zeta import DirichletPolynomial, boundary_zeta, compare, evaluate, gl_closed_form

__version__ = "0.1.0"
