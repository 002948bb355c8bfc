"""Exact Waring ranks, apolarity and rank-additivity certification over Q."""

from .apolarity import (
    apolar_graded_piece,
    catalecticant,
    essential_reduction,
    essential_variable_count,
)
from .parser import ParseError, parse_form
from .pointgeom import PointSet, ProjPoint, h1_deficiency, hilbert_function
from .polyring import Form, LinearForm, contract, power, substitute
from .qlinalg import Matrix, kernel_basis, rank, rref
from .sacharness import (
    SacReport,
    check_add2_configuration,
    classify_and_certify,
    random_instance,
    rank_certificate,
)
from .waring import (
    Decomposition,
    RankCertificate,
    binary_rank,
    catalecticant_lower_bound,
    expand,
    fold_collinear,
    monomial_rank,
    powers_dependence,
)

__version__ = "0.1.0"
