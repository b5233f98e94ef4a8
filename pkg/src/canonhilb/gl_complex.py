"""The deformation complex of cohomology of line bundles near K_X.

Over the parameter space ``T = C^q`` with coordinates ``t_1..t_q`` the complex

    0 -> O_T --A0--> O_T^q --A1--> O_T^p -> 0

has ``A0 = (t_1, ..., t_q)^T`` and ``A1[i][j] = sum_k a[i, j, k] t_k``; both
differentials are wedge with ``sum_k t_k phi_k``.  Cohomology is computed
fibrewise: evaluate at a rational point ``t`` and take exact ranks.  That is a
proxy for the stalk at 0, not a computation over the local ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .sampling import COMPLEX_POLICY, SamplingPolicy
from .surface_data import CupTensor


@dataclass(frozen=True)
class LinearFormMatrix:
    """Matrix whose entries are linear forms ``c_1 t_1 + ... + c_n t_n``.

    ``entries[r][c]`` is the coefficient tuple of length ``nvars``.
    """

    rows: int
    cols: int
    nvars: int
    entries: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry table does not match the declared shape")
        if any(len(e) != self.nvars for r in self.entries for e in r):
            raise ValueError(f"every entry needs exactly {self.nvars} coefficients")

    @classmethod
    def from_lists(cls, nvars: int, entries) -> "LinearFormMatrix":
        table = tuple(tuple(tuple(Fraction(c) for c in e) for e in row) for row in entries)
        cols = len(table[0]) if table else 0
        return cls(len(table), cols, nvars, table)

    def at(self, t: Sequence) -> list[list[Fraction]]:
        """Numeric matrix obtained by substituting ``t``."""
        if len(t) != self.nvars:
            raise ValueError(f"point has length {len(t)}, expected {self.nvars}")
        t = [Fraction(x) for x in t]
        return [[sum((c * x for c, x in zip(e, t)), Fraction(0)) for e in row] for row in self.entries]

    def transpose(self) -> "LinearFormMatrix":
        table = tuple(zip(*self.entries)) if self.rows else ((),) * self.cols
        return LinearFormMatrix(self.cols, self.rows, self.nvars, table)

    def compose(self, other: "LinearFormMatrix") -> list[list[dict[tuple[int, int], Fraction]]]:
        """Polynomial product ``self @ other`` as quadratic forms.

        Each entry maps a monomial ``(k, l)`` with ``k <= l`` (0-based, meaning
        ``t_k t_l``) to its coefficient; zero coefficients are dropped.
        """
        if self.cols != other.rows or self.nvars != other.nvars:
            raise ValueError("shapes do not compose")
        out = []
        for r in range(self.rows):
            row = []
            for c in range(other.cols):
                acc: dict[tuple[int, int], Fraction] = {}
                for m in range(self.cols):
                    f, g = self.entries[r][m], other.entries[m][c]
                    for k, fk in enumerate(f):
                        if not fk:
                            continue
                        for l, gl in enumerate(g):
                            if gl:
                                key = (k, l) if k <= l else (l, k)
                                acc[key] = acc.get(key, 0) + fk * gl
                row.append({key: v for key, v in acc.items() if v})
            out.append(row)
        return out


@dataclass(frozen=True)
class DeformationComplex:
    """Three-term complex ``0 -> O^r0 --d0--> O^r1 --d1--> O^r2 -> 0``.

    Built from a tensor it has ranks ``(1, q, p)``, ``d0 = A0`` and ``d1 = A1``;
    its dual has ranks ``(p, q, 1)`` with ``d0 = A1^T`` and ``d1 = A0^T``.
    """

    ranks: tuple[int, int, int]
    d0: LinearFormMatrix
    d1: LinearFormMatrix
    dual: bool = False

    def __post_init__(self):
        r0, r1, r2 = self.ranks
        if (self.d0.rows, self.d0.cols) != (r1, r0) or (self.d1.rows, self.d1.cols) != (r2, r1):
            raise ValueError("differential shapes do not match the ranks")

    @property
    def nvars(self) -> int:
        return self.d0.nvars

    @property
    def A0(self) -> LinearFormMatrix:
        return self.d1.transpose() if self.dual else self.d0

    @property
    def A1(self) -> LinearFormMatrix:
        return self.d0.transpose() if self.dual else self.d1

    @property
    def q(self) -> int:
        return self.ranks[1]

    @property
    def p(self) -> int:
        return self.ranks[0] if self.dual else self.ranks[2]


def build_complex(tensor: CupTensor) -> DeformationComplex:
    q, p = tensor.q, tensor.p
    unit = [tuple(Fraction(int(k == j)) for k in range(q)) for j in range(q)]
    a0 = LinearFormMatrix.from_lists(q, [[unit[j]] for j in range(q)])
    a1 = LinearFormMatrix.from_lists(
        q,
        [
            [tuple(tensor[i, j, k] for k in range(1, q + 1)) for j in range(1, q + 1)]
            for i in range(1, p + 1)
        ],
    )
    if p == 0:
        a1 = LinearFormMatrix(0, q, q, ())
    if q == 0:
        a0 = LinearFormMatrix(0, 1, 0, ())
    return DeformationComplex((1, q, p), a0, a1)


def verify_complex(cx: DeformationComplex) -> bool:
    """True iff ``d1 . d0`` vanishes identically as a polynomial matrix."""
    product = cx.d1.compose(cx.d0)
    return all(not entry for row in product for entry in row)


def dualize(cx: DeformationComplex) -> DeformationComplex:
    r0, r1, r2 = cx.ranks
    return DeformationComplex((r2, r1, r0), cx.d1.transpose(), cx.d0.transpose(), dual=not cx.dual)


def cohomology_dims(cx: DeformationComplex, t: Sequence) -> tuple[int, int, int]:
    """Fibrewise ``(h0, h1, h2)`` of the complex evaluated at ``t``."""
    if len(t) != cx.nvars:
        raise ValueError(f"point has length {len(t)}, expected {cx.nvars}")
    r0, r1, r2 = cx.ranks
    rk0 = linalg.rank(cx.d0.at(t)) if r0 and r1 else 0
    rk1 = linalg.rank(cx.d1.at(t)) if r1 and r2 else 0
    return (r0 - rk0, r1 - rk1 - rk0, r2 - rk1)


@dataclass(frozen=True)
class GenericCohomology:
    """Component-wise minimum of fibrewise cohomology over sampled ``t != 0``.

    The values are upper bounds for the generic dimensions, exact unless
    every sample landed on a special locus.
    """

    dims: tuple[int, int, int]
    witness_t: tuple[int, ...]
    samples: int
    policy: SamplingPolicy

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "witness_t": list(self.witness_t),
            "samples": self.samples,
            "policy": self.policy.as_dict(),
            "semantics": "fiberwise; certified upper bound on generic cohomology",
        }


def generic_cohomology_dims(cx: DeformationComplex, policy: SamplingPolicy = COMPLEX_POLICY) -> GenericCohomology:
    if cx.nvars == 0:
        return GenericCohomology(cohomology_dims(cx, ()), (), 1, policy)
    samples = [(t, cohomology_dims(cx, t)) for t in policy.points(cx.nvars)]
    best = tuple(min(d[n] for _, d in samples) for n in range(3))
    witness = next((t for t, d in samples if d == best), None)
    if witness is None:
        witness = next(t for t, d in samples if d[1] == best[1])
    return GenericCohomology(best, witness, len(samples), policy)
