"""Local model of the Hilbert scheme of canonical divisors.

Near the zero section, pairs ``(L, s)`` with ``c_1(L) = k_X`` are cut out of
``C^p x C^q`` (coordinates ``z`` on H^0(K_X), ``t`` on H^1(O_X)) by

    sum_{i,k} z_i a[i, j, k] t_k = 0,      j = 1..q,

i.e. ``B(z) t = 0`` with the skew-symmetric pencil ``B(z) = sum_i z_i A_i``.
The fibre of the projection to ``z`` is ``ker B(z)``; its dimension has the
parity of ``q`` because skew ranks are even.  On the open set where the rank
is maximal the model is a vector bundle, so ``dim M = p + (q - rank) - 1``
after removing the C^* scaling of ``s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import CrossCheckFailure, HypothesisViolated, ParityFailure
from .sampling import PENCIL_POLICY, SamplingPolicy
from .surface_data import CupTensor

PFAFFIAN_CROSSCHECK_MAX_Q = 8


@dataclass(frozen=True)
class SkewPencil:
    p: int
    q: int
    slices: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if len(self.slices) != self.p:
            raise ValueError(f"expected {self.p} slices, got {len(self.slices)}")
        for n, s in enumerate(self.slices, 1):
            if len(s) != self.q or any(len(row) != self.q for row in s):
                raise ValueError(f"slice {n} is not {self.q}x{self.q}")
            if not linalg.is_skew_symmetric(s):
                raise ValueError(f"slice {n} is not skew-symmetric")


def build_pencil(tensor: CupTensor) -> SkewPencil:
    slices = tuple(tuple(tuple(row) for row in tensor.slice(i)) for i in range(1, tensor.p + 1))
    return SkewPencil(tensor.p, tensor.q, slices)


def evaluate_pencil(pencil: SkewPencil, z: Sequence) -> list[list[Fraction]]:
    """``B(z) = sum_i z_i A_i``; the zero vector is allowed."""
    if len(z) != pencil.p:
        raise ValueError(f"z has length {len(z)}, expected {pencil.p}")
    q = pencil.q
    out = [[Fraction(0)] * q for _ in range(q)]
    for zi, s in zip(z, pencil.slices):
        if not zi:
            continue
        zi = Fraction(zi)
        for j in range(q):
            row, src = out[j], s[j]
            for k in range(q):
                if src[k]:
                    row[k] += zi * src[k]
    return out


def fiber_dimension(pencil: SkewPencil, z: Sequence) -> int:
    """``dim ker B(z) = q - rank B(z)``."""
    return pencil.q - linalg.rank(evaluate_pencil(pencil, z))


def _checked_rank(b, crosscheck: bool) -> int:
    r = linalg.rank(b)
    if r % 2:
        raise ParityFailure(f"skew-symmetric matrix of odd rank {r}")
    if crosscheck and len(b) <= PFAFFIAN_CROSSCHECK_MAX_Q:
        pr = linalg.pfaffian_rank(b)
        if pr != r:
            raise CrossCheckFailure(f"elimination rank {r} but Pfaffian-minor rank {pr}")
    return r


@dataclass(frozen=True)
class GenericRank:
    """Maximum rank over sampled ``z``: a lower bound on the generic rank."""

    rank: int
    witness_z: tuple[int, ...]
    samples: int
    policy: SamplingPolicy

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "witness_z": list(self.witness_z),
            "samples": self.samples,
            "policy": self.policy.as_dict(),
            "semantics": "certified lower bound on generic rank",
        }


def generic_rank(pencil: SkewPencil, policy: SamplingPolicy = PENCIL_POLICY, crosscheck: bool = False) -> GenericRank:
    """First sampled ``z`` of maximal rank.

    Sampling stops early once the rank reaches ``2 * floor(q / 2)``, which no
    skew matrix can exceed.  Every sampled rank is checked to be even, and with
    ``crosscheck`` (``q <= 8``) recomputed from Pfaffian minors.
    """
    if pencil.p == 0:
        raise HypothesisViolated("no z-space: p = 0 (the degree formula needs p_g(X) > 0)")
    ceiling = pencil.q - pencil.q % 2
    best, witness, n = -1, None, 0
    for z in policy.points(pencil.p):
        n += 1
        r = _checked_rank(evaluate_pencil(pencil, z), crosscheck)
        if r > best:
            best, witness = r, z
        if best == ceiling:
            break
    return GenericRank(best, witness, n, policy)


@dataclass(frozen=True)
class WitnessReport:
    witness_z: tuple[int, ...]
    rank: int
    fiber_dim: int
    dim_M_tilde: int
    dim_M: int
    chi: int
    parity_ok: bool
    trials: dict

    def as_dict(self) -> dict:
        return {
            "witness_z": list(self.witness_z),
            "rank": self.rank,
            "fiber_dim": self.fiber_dim,
            "dim_M_tilde": self.dim_M_tilde,
            "dim_M": self.dim_M,
            "chi": self.chi,
            "parity_ok": self.parity_ok,
            "trials": self.trials,
        }


def find_smooth_witness(
    pencil: SkewPencil, policy: SamplingPolicy = PENCIL_POLICY, crosscheck: bool = False
) -> WitnessReport:
    """Pick a point of the generic locus and read off ``dim M`` there.

    ``parity_ok`` is recomputed from the numbers, not assumed.
    """
    g = generic_rank(pencil, policy, crosscheck)
    p, q = pencil.p, pencil.q
    fiber = q - g.rank
    dim_tilde = p + fiber
    chi = 1 - q + p
    dim_m = dim_tilde - 1
    return WitnessReport(
        witness_z=g.witness_z,
        rank=g.rank,
        fiber_dim=fiber,
        dim_M_tilde=dim_tilde,
        dim_M=dim_m,
        chi=chi,
        parity_ok=(dim_m - chi) % 2 == 0,
        trials={"samples": g.samples, **policy.as_dict(), "semantics": "certified lower bound on generic rank"},
    )


@dataclass(frozen=True)
class GammaModel:
    """The variety of ``(z, t)`` with ``B(z) t = 0``."""

    pencil: SkewPencil

    @property
    def equation_count(self) -> int:
        return self.pencil.q

    def equations(self, z: Sequence, t: Sequence) -> list[Fraction]:
        """Values of the q defining equations at ``(z, t)``."""
        if len(t) != self.pencil.q:
            raise ValueError(f"t has length {len(t)}, expected {self.pencil.q}")
        return linalg.matvec(evaluate_pencil(self.pencil, z), [Fraction(x) for x in t])


def gamma_membership(model: GammaModel, z: Sequence, t: Sequence) -> bool:
    return not any(model.equations(z, t))
