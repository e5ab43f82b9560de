"""
Proper-biharmonic Legendre curves and Hopf cylinders in the unit 3-sphere
with the D-homothetically deformed Sasakian structure of parameter ``a``.
"""

from .ambient import StereoChart, chart_roundtrip, j_apply, tangent_project
from .axioms import axiom_report
from .cartan_vranceanu import CVParams, cartan_vranceanu
from .connections import Oracle, deformed_covariant, flat_derivative, sphere_covariant
from .curve_engine import BiharmonicReport, FrenetData, bitension, classify, frenet, tension, tension_profile
from .curves import ArcLengthCurve, ClosedFormCurve
from .errors import (
    AntipodalPoint,
    BaseMismatch,
    DegenerateCurve,
    DomainBoundary,
    GeometryError,
    IllConditioned,
    InconsistentSolution,
    InvalidDirection,
    InvalidFrame,
    NotLegendre,
    NotUnitSpeed,
    OutOfRange,
    SingularMetric,
)
from .generators import (
    HopfCylinderPatch,
    LatticeTorus,
    LegendreFrame,
    cylinder_geodesic,
    cylinder_pde_residuals,
    hopf_cylinder,
    lattice,
    legendre_biharmonic_curve,
    ode_residual,
    proposition_tau,
    rotated_frame,
    tension_relation_residual,
)
from .gram import GramSolution, GramSystem, build_curve_system, build_cylinder_system, reconstruct_curve, solve_gram
from .report import Check, VerificationReport
from .sasakian import TangentVector, TannoStructure, curvature_tensor, eta, metric_g, phi, tanno_constants, xi
from .verify import VerifyConfig, run_verify

__version__ = "0.1.0"
