"""Coulomb-gauge versus simplified transverse projection of moving-charge potentials."""
from .coulomb import PotentialSample, a_coulomb, a_simplified, delta_a, evaluate
from .errors import LWGaugeError, NumericalError, ValidationError
from .potentials import lw_sample
from .retarded import solve_retarded
from .trajectory import Kind, Trajectory

__version__ = "0.1.0"

__all__ = ["Kind", "LWGaugeError", "NumericalError", "PotentialSample", "Trajectory",
           "ValidationError", "a_coulomb", "a_simplified", "delta_a", "evaluate", "lw_sample",
           "solve_retarded"]
