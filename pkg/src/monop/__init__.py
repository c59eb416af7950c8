"""Monomial operators on L2[0,1] and weighted compositions on the Hardy
space of the half-plane Re s > -1/2: feasibility checks, Nevanlinna-Pick
interpolation, operator application, Galerkin norm estimation,
boundedness verdicts for flat shifts, and unitary construction.
"""

from .errors import (BetaRangeError, DegenerateNodes, DomainError,
                     EigenFailure, EvalError, ExponentOutOfRange, MonopError,
                     NotInterpolable, ParseError, PoleError,
                     QuadratureNoConvergence, ReTauNegative,
                     TabulatedWeightError, TailBoundViolated, UnknownBuiltin)
from .flatbound import (BoundaryProfile, BoundednessVerdict, ScanGrid,
                        carleson_sup, flat_verdict, halfplane_comparison,
                        poisson_integral, poisson_kernel)
from .funcexpr import FuncExpr, evaluate, involute, parse, to_string
from .halfplane import (HalfPlaneAutomorphism, HalfPlanePoint, in_halfplane,
                        kernel_eval, moebius_lambda, moebius_lambda_inv,
                        require_halfplane)
from .hardy import (KernelSum, boundary_norm_sq, hardy_inner, u_apply,
                    u_inverse, u_pointwise)
from .l2poly import (LegendreCoords, MonomialSum, eval_monomial_sum, l2_inner,
                     monomial_legendre_coords, quadrature_inner, to_legendre)
from .operators import (AutomorphismMap, CallableWeight, ExprMap, ExprWeight,
                        FlatShift, InterpolantMap, MonomialOperatorSpec,
                        TableWeight, adjoint_apply, apply, builtin,
                        conjugated_apply_kernel, norm_estimate,
                        spec_from_sequences, weight_from_coeffs)
from .pick import (PickMatrix, PsdVerdict, SchurInterpolant, diag_pick_matrix,
                   np_interpolate, pick_matrix, psd_check)
from .unitaryop import (bourdon_narayan_weight, build_unitary, isometry_check,
                        unitary_coeff)

__version__ = "0.1.0"
