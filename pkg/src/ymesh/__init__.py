"""Exact-arithmetic engine for Y-meshes, generalized pentagram maps, and
their cluster (quiver) dynamics."""

from .rational import ExtQ, INF, DegenerateError
from .projective import Point, Flat, span, join, meet, meet_point, cross_ratio, multi_ratio
from .pins import Pin, PinError, convex_relation, d_of_s, m2_of_s, lattice_index
from .filtration import FiltrationSpec, FiltrationUnavailable, classify_case, audit_filtration
from .mesh import (MeshWindow, MeshError, DegenerateConfig, generate_window,
                   generate_polygon_window, generate_reduced, generate_1d,
                   step_forward, step_backward, step_reduced_forward, step_1d,
                   check_relations, check_menelaus)
from .yvars import y_of, check_eqmain, eqmain_residual, bracket_product
from .quiver import Quiver, QuiverConfigError, build_qs, mutate_x, mutate_y, verify_period_one
from .lifted import LiftedUnavailable, build_lifted, phi_map, tilde_ideal_generator, local_config
from .fractal import make_fractal, genericity_audit, bound_check, genericity_evidence
from .ijmap import IJMapError, t_ij, t_ij_inverse
from .zoo import ZOO, BOUNDARY_PINS, zoo_pin, zoo_dim

__version__ = "0.1.0"
