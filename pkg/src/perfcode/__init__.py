"""Subgroup perfect codes: decision procedures for finite groups and a
replay of the AGL(2, q^2) counterexample family."""
from .codes import DecisionReport, PhiResult, cayley_perfect_code_check, is_perfect_code, phi_check
from .fields import FieldTower, tower_create
from .groups import make_agl2, make_hq, make_named, subgroup_closure
from .repro import reproduce

__version__ = "0.1.0"
