"""Positive-existential divisibility definitions over S-integers of imaginary
quadratic fields: arithmetic of O_{K,S}, an L_div formula layer, and builders
for the formulas defining y != 0, multiplication of units and squaring."""
from .qfield import KElem, QuadField, format_elem, make_field, parse_elem
from .ideals import PrimeIdeal, class_number, factor_element, split_prime, valuation
from .sring import SRing, SUnit, make_sring, ring_from_spec
from .construct import Constants, compute_constants, find_lenstra_pair

__all__ = [
    "KElem", "QuadField", "format_elem", "make_field", "parse_elem",
    "PrimeIdeal", "class_number", "factor_element", "split_prime", "valuation",
    "SRing", "SUnit", "make_sring", "ring_from_spec",
    "Constants", "compute_constants", "find_lenstra_pair",
]
