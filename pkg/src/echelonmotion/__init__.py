"""Echelonmotion and rowmotion on finite posets."""

from .echelon import (CartanMatrix, ExtensionClass, IndependenceReport, LabelingCertificate, Witness,
                      build_certificate, build_constrained_extension, cartan_matrix, coxeter_matrix,
                      ech_image, echelonmotion, in_class, is_echelon_independent_brute,
                      is_echelon_independent_fast, pu_check, verify_certificate)
from .errors import (AcyclicityError, CapacityError, ConstraintError, DomainError, EchelonError,
                     InconsistencyError, InputError, NotALatticeError, NotSemidistributiveError,
                     NotTrimError, ParseError, SingularMatrixError)
from .extensions import (LinearExtension, count_linear_extensions, extension_from_blocks,
                         first_extension, linear_extensions, random_linear_extension)
from .families import generate
from .kernels import BACKEND
from .lattice import (Lattice, as_lattice, barnard_rowmotion, birkhoff_rowmotion, is_distributive,
                      is_modular, is_semidistributive)
from .macneille import Completion, macneille_completion
from .poset import ElementBijection, Poset, from_covers
from .suites import SuiteReport, verify_suite
from .trim import TrimData, is_trim, trim_data, trim_rowmotion, vertebral_extension

__version__ = "0.1.0"
