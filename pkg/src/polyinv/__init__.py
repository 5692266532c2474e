"""Synthesis and verification of polyhedral invariants ``||F x||_inf <= 1``
for linear systems ``dx/dt = A x``."""
from .errors import *  # noqa: F401,F403
from .linalg import (BlockDescriptor, JordanDecomposition, eigenvalues, geometric_multiplicity,
                     invert, rank, real_jordan)
from .lp import LinearProgram, LpResult, lp_solve
from .matfile import parse_matrix, read_matrix, render_matrix
from .oracle import (CounterexampleReport, TrajectoryProbe, expm, sample_boundary,
                     trajectory_contained)
from .report import REPORT_SCHEMA, AnalysisReport, analyze, format_report
from .spectrum import (EigenClass, NecessaryResult, Spectrum, classify, necessary_min_s,
                       spiral_ratio, sufficient_s)
from .synthesis import BlockFaces, PolyhedralInvariant, row_normalize, synthesize, synthesize_block
from .tolerances import DEFAULT, Tolerances
from .verify import (Certificate, VerificationReport, check_halfspace_invariant, check_invariant,
                     find_certificate, is_bmatrix, is_bounded)

__version__ = "0.1.0"
