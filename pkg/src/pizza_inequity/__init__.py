"""Pizza inequity: series evaluation, direct-geometry oracles and bounds."""
from .bounds import ExtremumReport, bound_g, bound_m, extremum, m_a
from .errors import (BudgetExhausted, DomainError, EvenN, InvalidOffset,
                     NEqualsOne, NearSingular, NonConvergence, PizzaError,
                     ZeroFrequency)
from .fourier import (CoefficientKey, CoefficientValue, SeriesResult,
                      TruncationPolicy, coefficient_closed_form,
                      coefficient_numeric, f_series, g_series, half_binomial,
                      leading_coefficient, p_m)
from .geometry import (PizzaConfig, SliceAreaReport, inequity_direct, radius,
                       slice_area_closed_form, slice_area_quadrature,
                       slice_areas, step_fourier_coefficient_numeric,
                       step_function)
from .quadrature import QuadratureRequest, QuadratureResult, integrate, quad

__version__ = "0.1.0"
