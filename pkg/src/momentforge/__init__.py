"""Exact toric and torus-GIT verdicts alongside numerical checks of momentum maps and Kahler potentials."""

from .cox_git import WeightMatrix, cox_weights, fan_chamber, fiber_classify, semistable_support
from .fan_toolkit import Fan, FanError, class_group, is_complete, is_projective, is_smooth, load_fan, parse_fan
from .kform_lab import complex_hessian_fd, min_c_search, positivity_scan, wrong_metric_matrix
from .lattice_core import LinearSystem, cone_member, kernel_basis, lp_feasible, smith_normal_form
from .moment_numerics import LieAlgebraAction, momentum_affine, momentum_from_potential, momentum_projective

__version__ = "0.1.0"
