"""Exact computation of indices in relative Grothendieck groups of d-exact
categories built from modules over bound quiver algebras."""
from .algebra import BoundAlgebra, Quiver, Relation, build_algebra
from .algfile import AlgFile, load, loads
from .approx import (AddSubcategory, check_gen, is_generating, minimal_right_approximation, minimize,
                     right_approximation)
from .dexact import (DClusterTilting, DSequence, DTorsionClass, ModuleCategory, certify_dct, d_kernel,
                     is_d_exact, is_in_relative_structure, is_left_d_exact, t_resolution)
from .errors import *  # noqa: F401,F403
from .exactla import GF, QQ, IntMat, Mat, quotient_group, smith_normal_form
from .fpfun import FPPresentation, functor_iso, functor_resolution, horseshoe, restrict
from .kgroups import (RelativeK0, SplitK0, build_relative_k0, index_dct, theta_C, theta_X,
                      verify_prop13_property, verify_schanuel, verify_theorem_1_1, verify_theorem_A)
from .repmod import (Catalog, Morphism, Representation, build_catalog, cokernel, decompose, direct_sum,
                     hom_basis, image, is_isomorphic, kernel)

__version__ = "0.1.0"
