"""Localized quiver Hecke algebras over a root datum: orbits, quadratic data,
skew-group normal forms, gradings and small representations."""
from .coeff_rings import CoeffRing
from .datum import (Datum, HeckeParams, ParameterError, check_conditions, graded_H,
                    splitting_family, verify_splitting)
from .fields import make_field
from .grading import DegreeRule, GradedChar, verify_homogeneity
from .qhecke_core import Engine, QHElem, SkewElem, hecke_isomorphism_check, verify_relations
from .root_datum import RootDatum, from_cartan, gl, named
from .weyl_orbits import Orbit, Weight, WeylGroup

__version__ = "0.1.0"

__all__ = [
    "CoeffRing", "Datum", "DegreeRule", "Engine", "GradedChar", "HeckeParams", "Orbit",
    "ParameterError", "QHElem", "RootDatum", "SkewElem", "Weight", "WeylGroup",
    "check_conditions", "from_cartan", "gl", "graded_H", "hecke_isomorphism_check",
    "make_field", "named", "splitting_family", "verify_homogeneity", "verify_relations",
    "verify_splitting",
]
