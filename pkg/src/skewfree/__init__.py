"""Exact arithmetic in free skew extensions R<x1, ..., xn; sigma, delta>.

Elements are kept in right-coefficient normal form ``sum(w * a_w)`` and
multiplied with the rule ``r x_j = sum_i x_i sigma_ij(r) + delta_j(r)``.
"""

from .analysis import (
    DependenceWitness,
    Inconclusive,
    NoDependenceFound,
    NotPrime,
    NotUnit,
    NotUnitCertified,
    PrimeCertified,
    Unit,
    degree_additivity_check,
    graded_transfer_check,
    megainjective_probe,
    prime_probe,
    unit_probe,
    zero_divisor_from_witness,
)
from .configs import builtin
from .errors import SkewError
from .linalg import RingMatrix, matrix_inverse, solve_right_dependence
from .oracle import oracle_mul
from .parsing import load_ring_spec, parse_expr, parse_poly, parse_ring_spec
from .rings import Integers, IntegersMod, Poly, Rationals, RingElem, TruncPoly, ring_from_json
from .series import AboveTruncation, TruncSeries, nq_bound, ord_series, series_mul_trunc
from .skewpoly import SkewPoly, deg, leading, mul, ord_, push_left_coefficient
from .structure import (
    Extension,
    SigmaDerivation,
    SigmaHom,
    delta_inner,
    nilpotence_bound,
    sigma_power,
    sigma_word,
    validate_hom,
    validate_leibniz,
)
from .transforms import BasisChange, eval_hom, kill_delta, map_through, scalarize_sigma
from .words import Word, enumerate_words, word_from_index, word_index

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
