"""Tate cohomology, descent spectral sequences and Picard groups for A(1)."""

from .f2 import BACKEND
from .hopf import HopfAlgebra, builtin, builtin_A1, builtin_E1, from_presentation, validate_hopf
from .modules import AModule, dual, restrict, tensor, trivial_module, validate_module
from .stable import ExtCalculator, complete_resolution, cosyzygy, ext, reduce, syzygy
from .algebra_objects import T_of
from .descent import e1_end, end_page_theta
from .piclift import brute_force_lifts, lift_bound, lift_obstruction_report, pic_report
from .fileformat import parse_algebra, parse_module, dump_algebra, dump_module

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "HopfAlgebra", "builtin", "builtin_A1", "builtin_E1", "from_presentation",
    "validate_hopf", "AModule", "dual", "restrict", "tensor", "trivial_module",
    "validate_module", "ExtCalculator", "complete_resolution", "cosyzygy", "ext", "reduce",
    "syzygy", "T_of", "e1_end", "end_page_theta", "brute_force_lifts", "lift_bound",
    "lift_obstruction_report", "pic_report", "parse_algebra", "parse_module",
    "dump_algebra", "dump_module",
]
