"""Laurent polynomial Landau-Ginzburg models of Fano complete intersections in Grassmannians."""
from .iseries import SeriesPrefix, fano_index, iseries
from .laurent import LaurentPolynomial, VariableTable
from .periods import PeriodReport, check_period, constant_terms_of_powers
from .quiver import InvalidSpecError, ModelSpec, decompose
from .superpotential import closed_form, eliminate, superpotential
from .weights import action_matrix, weight_table

__version__ = "0.1.0"
