"""Exact polar homology: meromorphic forms on catalog varieties, their
residues, polar chains with boundary, push-forwards and polar intersections.

Scalars live in ``Q(i)[tau, 1/tau]`` with ``tau = 2*pi*i`` kept symbolic.
"""

from . import errors
from .algebra import GaussianRational, MultiPoly, RationalFunction, gaussian, tau
from .chains import (Curve, HomologyReport, PolarChain, PrimeChain, RelativeContext, boundary,
                     boundary_squared, contained, hp0_class, hp_report, normalize, polar_euler,
                     reduce_relative)
from .dsl import Diagnostic, parse
from .errors import PolarisError
from .forms import DifferentialForm, PoleComponent, infinity, pole, polar_components, validate_chain_form
from .intersect import (ConormalFrame, IntersectionResult, LinkingResult, PolarOrientation,
                        conormal_frame, intersection_number, intersection_product, linking_number)
from .pushforward import check_residue_commute, pullback, pushforward
from .render import render_chain, render_form
from .residue import (p1_residue_sum, poincare_residue, point_residue, repeated_residue,
                      residue_all)
from .session import run_session, run_text
from .spaces import (AmbientSpace, Chart, SubvarietyPresentation, catalog_space, graph,
                     hypersurface, point, product_of_lines, projective_space, rational_self_map,
                     transition_point, validate_smooth, whole)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
