"""Exact local models of the Hilbert scheme of canonical divisors on a surface.

The cup-product tensor of a surface determines a skew-symmetric pencil whose
generic rank gives the dimension of ``Hilb^{k_X}_X`` at a smooth canonical
divisor, and from it the localized virtual degree ``(-1)^chi(O_X)``.
"""
from .errors import CrossCheckFailure, HypothesisViolated, ParityFailure
from .gl_complex import (
    DeformationComplex,
    LinearFormMatrix,
    build_complex,
    cohomology_dims,
    dualize,
    generic_cohomology_dims,
    verify_complex,
)
from .local_model import (
    GammaModel,
    SkewPencil,
    WitnessReport,
    build_pencil,
    evaluate_pencil,
    fiber_dimension,
    find_smooth_witness,
    gamma_membership,
    generic_rank,
)
from .polynomial import Polynomial
from .sampling import COMPLEX_POLICY, PENCIL_POLICY, SamplingPolicy
from .surface_data import (
    CupTensor,
    Intersection,
    SpecParseError,
    SpecValidationError,
    SurfaceSpec,
    dump_spec,
    euler_characteristic,
    load_spec,
    product_of_curves,
    random_tensor,
    validate,
    virtual_dimension,
)
from .virtual_degree import (
    DegenerateZero,
    NotAZero,
    ToyCosectionModel,
    certify_simple_zero,
    localization_support,
    localized_degree_simple_point,
    poincare_degree,
)

__version__ = "0.1.0"
