"""Circle-map-like dynamics of F(x) = x + b - g(x) with a steep sigmoid g."""
from .errors import (BracketError, CertificateFailed, CriticalPointError, DegenerateConfigurationError,
                     DegenerateOrbitError, DomainError, NoCriticalPointsError, NoOrbitFoundError,
                     NoParentsError, NumericError, RotamimeError, UndefinedPointError)
from .farey import Rational, farey_parents, larger_denominator_parent, make_rational
from .maps import (Interval, KernelFamily, MapSpec, correction, eval_F, eval_F_deriv, eval_G,
                   eval_g, eval_g_deriv, eval_hybrid, rotation_power, schwarzian)
from .conditions import ConditionReport, check_membership, critical_points, epsilon_min
from .orbit import PeriodicOrbit, basin_fraction, find_attracting_orbit, lemma_certificate
from .bifurcation import (PeriodicWindow, ScanResult, birth_parameter, detect_windows,
                          return_map, scan)

__version__ = "0.1.0"
