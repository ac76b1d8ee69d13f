"""Exact word machinery, quasimorphisms and palindromic-length bounds for
HNN extensions and amalgamated free products of finite groups."""

from .amalgam import AmalInstance, AmalWord, AMark, Plain, SpecialForm
from .errors import FreewidthError
from .groups import (
    CaseClassification,
    FiniteGroup,
    FixedPresentationTable,
    Subgroup,
    SubgroupIso,
    Transversal,
    classify_amalgam_case,
    cosets,
    cyclic,
    direct_product,
    double_coset,
    fixed_presentation_table,
    iso_check,
    load_group,
    quotient,
    subgroup_check,
    symmetric,
)
from .hnn import HnnInstance, HnnWord
from .instances import instance_from_dict, load_instance
from .lab import (
    BallIndex,
    GrowthReport,
    PlengthOracle,
    SuiteReport,
    enumerate_ball,
    enumerate_m_almost_palindromes,
    growth_report,
    growth_table,
    plength_oracle,
    verify_suite,
)
from .runs import Mark, RunStats, gap_stats, run_stats, s_product, signature_inverse
from .words import hamming_to_palindrome

__version__ = "0.1.0"
