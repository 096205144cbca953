"""Exact computations with logarithmic one-forms on projective space."""

from .forms import Form, contract_radial, differential, exterior_derivative, is_projective, wedge
from .poly import FieldSpec, Polynomial, monomials_of_degree, random_poly

__version__ = "0.1.0"
