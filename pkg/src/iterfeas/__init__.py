"""Feasibility and smooth witness construction for iterated-integral
targets of increasing functions on [0, 1]."""

from .construct import (ConstructConfig, ConstructError, ConstructResult,
                        InfeasibleError, SParams, build_psi, build_rho,
                        construct, delta_window, in_S, solve_t, solve_u,
                        solve_v)
from .corner import PolylinePlan, hull_check, round_corner, round_polyline
from .curve import (CornerSpec, ConstPiece, Curve, CurveError, JetCapPiece,
                    PolyPiece, curve_from_json_dict, load_curve, save_curve)
from .jets import Jet, JetCapSpec, JetError, choose_k_delta0, sigma, tau, validate_jet
from .region import (FeasibleTriple, RegionReport, alpha_solutions, bounds_c,
                     check_beta, classify, sample_strict, snap_classify)
from .stepfn import (ExtremalData, StepParams, extremal, in_triangle, line_v,
                     make_two_step, solve_u_on_line, third_integral_on_line)
from .wn import EndpointTuple, VTuple, rescale_w, t_n, vn_member, witness, wn_member

__version__ = "0.1.0"
