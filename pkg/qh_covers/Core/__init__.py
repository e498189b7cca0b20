from .algebra import (Algebra, ModuleMap, Representation, RightRepresentation, dual_module, endomorphism_algebra,
                      hom_space, idempotent_truncation, opposite, regular_module, right_ideal_module,
                      tensor_over_algebra)
from .exceptions import DomainMismatchError, InvalidInputError, NotProjectiveError, QHCoversError, VerificationError
from .homology import (SchurFunctor, UnitMap, adjunction_unit, ext, ext_injective, free_resolution,
                       minimal_resolution, tor)
from .qh_structure import (HeredityChain, costandard_modules, has_delta_filtration, standard_module,
                           verify_split_qh)
from .quiver import quiver_algebra, two_vertex_quiver_fixture
from .radical import radical, socle
from .ring_arith import CoefficientDomain, Matrix, cokernel_invariants, rref, smith_normal_form
