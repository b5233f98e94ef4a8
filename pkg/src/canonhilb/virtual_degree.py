"""Cosection-localized degree.

Two ingredients:

* the sign rule for a smooth ``n``-dimensional chart with obstruction bundle
  of rank ``n``, zero obstruction theory, and a cosection vanishing at a
  single nondegenerate point: the localized class is ``(-1)^n`` times that
  point;
* a smooth point of ``Hilb^{k_X}_X`` found in the local model, whose
  dimension has the parity of ``chi(O_X)``.

Together they give ``deg = (-1)^chi(O_X)`` whenever ``p_g > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import linalg
from .errors import HypothesisViolated, ParityFailure
from .local_model import WitnessReport, build_pencil, find_smooth_witness
from .polynomial import Polynomial
from .sampling import PENCIL_POLICY, SamplingPolicy, rng_for
from .surface_data import SurfaceSpec, euler_characteristic, virtual_dimension


class NotAZero(ValueError):
    def __init__(self, index: int, value: Fraction):
        self.index = index
        self.value = value
        super().__init__(f"component {index} is {linalg.format_rational(value)} at the candidate, not 0")


class DegenerateZero(ValueError):
    """The candidate is a zero but the Jacobian there is singular."""


@dataclass(frozen=True)
class ToyCosectionModel:
    """Cosection on the trivial rank-n bundle over an n-dimensional chart."""

    n: int
    components: tuple[Polynomial, ...]
    candidate: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError(f"need {self.n} components, got {len(self.components)}")
        if len(self.candidate) != self.n:
            raise ValueError(f"candidate must have length {self.n}")
        if any(f.nvars != self.n for f in self.components):
            raise ValueError(f"components must be polynomials in {self.n} variables")

    def jacobian(self, point: Sequence) -> list[list[Fraction]]:
        return [[f.diff(b)(point) for b in range(self.n)] for f in self.components]


@dataclass(frozen=True)
class SimpleZeroCertificate:
    point: tuple[Fraction, ...]
    jacobian_det: Fraction
    verified: bool


def certify_simple_zero(model: ToyCosectionModel) -> SimpleZeroCertificate:
    for idx, f in enumerate(model.components, 1):
        v = f(model.candidate)
        if v != 0:
            raise NotAZero(idx, v)
    d = linalg.det(model.jacobian(model.candidate))
    if d == 0:
        raise DegenerateZero(
            "Jacobian determinant vanishes at the candidate; the zero is not simple"
        )
    return SimpleZeroCertificate(tuple(model.candidate), d, True)


def localized_degree_simple_point(model: ToyCosectionModel) -> int:
    """``(-1)^n``; only the certificate depends on the components."""
    certify_simple_zero(model)
    return -1 if model.n % 2 else 1


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    chi: int
    dim_M: int
    paths_agree: bool
    witness: WitnessReport

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "chi": self.chi,
            "dim_M": self.dim_M,
            "paths_agree": self.paths_agree,
            "witness": self.witness.as_dict(),
        }


def _require_pg(spec: SurfaceSpec):
    if spec.p < 1:
        raise HypothesisViolated(
            f"{spec.label or 'surface'} has p_g = 0; the degree formula holds only if p_g(X) > 0"
        )


def poincare_degree(spec: SurfaceSpec, policy: SamplingPolicy = PENCIL_POLICY, crosscheck: bool = False) -> DegreeReport:
    """Degree of the virtual class of ``Hilb^{k_X}_X``, computed two ways.

    The witness gives ``dim M`` at a smooth canonical divisor; the sign rule
    turns that into ``(-1)^{dim M}``, which must equal ``(-1)^chi``.
    """
    _require_pg(spec)
    chi = euler_characteristic(spec)
    w = find_smooth_witness(build_pencil(spec.tensor), policy, crosscheck)
    if (w.dim_M - chi) % 2:
        raise ParityFailure(f"dim M = {w.dim_M} and chi = {chi} have different parity")
    degree = -1 if chi % 2 else 1
    from_witness = -1 if w.dim_M % 2 else 1
    return DegreeReport(degree, chi, w.dim_M, degree == from_witness, w)


@dataclass(frozen=True)
class SupportDescriptor:
    support: str
    virtual_dimension: Union[int, str]

    def as_dict(self) -> dict:
        return {"support": self.support, "virtual_dimension": self.virtual_dimension}


def localization_support(spec: SurfaceSpec) -> SupportDescriptor:
    """Where the localized class of ``Hilb^{k_X}_X`` lives: one canonical divisor."""
    _require_pg(spec)
    if spec.intersection is None:
        vd: Union[int, str] = "unknown (no intersection data)"
    else:
        kk = spec.intersection.kx_kx
        vd = virtual_dimension(kk, kk)
    return SupportDescriptor("single point", vd)


def random_toy_model(n: int, seed: int, degenerate: bool = False) -> ToyCosectionModel:
    """Components ``L u + h(u)`` in ``u = x - c`` for a random rational ``c``.

    ``L`` is an integer matrix, invertible unless ``degenerate`` (then its last
    row is a combination of the others, or zero for n = 1); ``h`` collects
    random quadratic and cubic terms.  The Jacobian at ``c`` is ``L``.
    """
    rng = rng_for(seed, n, int(degenerate))

    def ri(lo, hi):
        return int(rng.integers(lo, hi, endpoint=True))

    c = tuple(Fraction(ri(-5, 5), ri(1, 4)) for _ in range(n))
    while True:
        lin = [[ri(-3, 3) for _ in range(n)] for _ in range(n)]
        if degenerate and n:
            if n == 1:
                lin[0][0] = 0
            else:
                a, b = ri(-2, 2), ri(-2, 2)
                lin[-1] = [a * x + b * y for x, y in zip(lin[0], lin[1 % (n - 1)])]
            break
        if linalg.det(lin) != 0:
            break
    u = [Polynomial.variable(n, a) - c[a] for a in range(n)]
    comps = []
    for row in lin:
        f = Polynomial(n)
        for coef, ua in zip(row, u):
            f = f + coef * ua
        for _ in range(2):
            a, b = ri(0, n - 1), ri(0, n - 1)
            f = f + ri(-4, 4) * u[a] * u[b]
        a = ri(0, n - 1)
        f = f + ri(-2, 2) * u[a] ** 3
        comps.append(f)
    return ToyCosectionModel(n, tuple(comps), c)
