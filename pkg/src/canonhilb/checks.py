"""Invariant suite over random tensors.

Every check here is a theorem about alternating tensors, so any failure
points at the implementation, never at the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import CrossCheckFailure, ParityFailure
from .gl_complex import build_complex, cohomology_dims, dualize, generic_cohomology_dims, verify_complex
from .local_model import PFAFFIAN_CROSSCHECK_MAX_Q, build_pencil, evaluate_pencil, find_smooth_witness
from .sampling import rng_for
from .surface_data import CupTensor, random_tensor, validate


@dataclass
class InstanceResult:
    index: int
    p: int
    q: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def expect(self, ok: bool, message: str):
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _points(rng, dim: int, count: int, small: int = 3, large: int = 1000):
    """Half the points from a tiny box (hits special loci), half from a wide one."""
    for n in range(count):
        bound = small if n % 2 == 0 else large
        yield tuple(int(x) for x in rng.integers(-bound, bound, size=dim, endpoint=True))


def corrupt(tensor: CupTensor) -> CupTensor:
    """Break antisymmetry by storing one mirror slot with the wrong sign."""
    entries = dict(tensor.entries)
    if entries:
        (i, j, k), v = next(iter(entries.items()))
        entries[(i, k, j)] = v
    elif tensor.p and tensor.q >= 2:
        entries[(1, 1, 2)] = Fraction(1)
        entries[(1, 2, 1)] = Fraction(1)
    return CupTensor(tensor.p, tensor.q, entries)


def check_tensor(
    tensor: CupTensor,
    key: tuple[int, ...],
    z_samples: int = 100,
    t_samples: int = 100,
    crosscheck: bool = True,
    index: int = 0,
) -> InstanceResult:
    """Run all invariants on one tensor; ``key`` seeds the random points."""
    res = InstanceResult(index, tensor.p, tensor.q)
    p, q = tensor.p, tensor.q
    report = validate(tensor)
    res.expect(report.ok, "validate: " + "; ".join(report.violations[:3]))

    cx = build_complex(tensor)
    res.expect(verify_complex(cx), "complex: A1.A0 is not identically zero")
    if not report.ok:
        return res

    rng = rng_for(*key)
    pencil = build_pencil(tensor)
    try:
        witness = find_smooth_witness(pencil, crosscheck=crosscheck) if p else None
    except (ParityFailure, CrossCheckFailure) as exc:
        res.expect(False, f"witness: {exc}")
        return res
    if witness is not None:
        res.expect(witness.rank % 2 == 0, f"generic rank {witness.rank} is odd")
        res.expect(witness.parity_ok, f"dim_M={witness.dim_M} vs chi={1 - q + p}: parity differs")
        res.expect((witness.dim_M - (1 - q + p)) % 2 == 0, "dim_M and chi disagree mod 2")

    for z in _points(rng, p, z_samples):
        b = evaluate_pencil(pencil, z)
        res.expect(linalg.is_skew_symmetric(b), f"B{z} not skew")
        r = linalg.rank(b)
        res.expect(r % 2 == 0, f"rank B{z} = {r} is odd")
        if crosscheck and q <= PFAFFIAN_CROSSCHECK_MAX_Q:
            pr = linalg.pfaffian_rank(b)
            res.expect(pr == r, f"rank B{z}: elimination {r}, Pfaffian minors {pr}")
        if witness is not None:
            res.expect(q - r >= q - witness.rank, f"fiber dim at {z} below generic")

    gen = generic_cohomology_dims(cx)
    chi = 1 - q + p
    dual = dualize(cx)
    for n, t in enumerate(_points(rng, q, t_samples)):
        h = cohomology_dims(cx, t)
        res.expect(h[0] - h[1] + h[2] == chi, f"Euler: h{t} = {h}, chi = {chi}")
        res.expect(all(a >= b for a, b in zip(h, gen.dims)), f"semicontinuity: h{t} = {h} < generic {gen.dims}")
        res.expect(h[0] == (0 if any(t) else 1), f"h0{t} = {h[0]}")
        if n < 5:
            hd = cohomology_dims(dual, t)
            res.expect(hd == (h[2], h[1], h[0]), f"dual cohomology at {t}: {hd} vs {h}")
    return res


@dataclass
class SuiteResult:
    seed: int
    instances: list[InstanceResult]

    @property
    def checks(self) -> int:
        return sum(r.checks for r in self.instances)

    @property
    def failed(self) -> list[InstanceResult]:
        return [r for r in self.instances if r.failures]

    @property
    def ok(self) -> bool:
        return not self.failed

    def as_dict(self) -> dict:
        first = self.failed[0] if self.failed else None
        return {
            "ok": self.ok,
            "instances": len(self.instances),
            "checks": self.checks,
            "failed_instances": len(self.failed),
            "first_failure": None
            if first is None
            else {"seed": self.seed, "instance": first.index, "p": first.p, "q": first.q, "failures": first.failures[:5]},
        }


def instance_tensor(p_max: int, q_max: int, seed: int, index: int, density=Fraction(1, 2)) -> CupTensor:
    """The ``index``-th random tensor of a suite; ``1 <= p <= p_max``, ``0 <= q <= q_max``."""
    rng = rng_for(seed, index, 7)
    p = int(rng.integers(1, p_max, endpoint=True))
    q = int(rng.integers(0, q_max, endpoint=True))
    return random_tensor(p, q, seed=int(rng.integers(0, 2**31)), density=density)


def random_check(
    p_max: int,
    q_max: int,
    instances: int,
    seed: int = 0,
    z_samples: int = 100,
    t_samples: int = 100,
    crosscheck: bool = True,
    inject_fault: bool = False,
) -> SuiteResult:
    if p_max < 1 or q_max < 0 or instances < 0:
        raise ValueError("need p_max >= 1, q_max >= 0, instances >= 0")
    out = []
    for idx in range(instances):
        tensor = instance_tensor(p_max, q_max, seed, idx)
        if inject_fault:
            tensor = corrupt(tensor)
        out.append(check_tensor(tensor, (seed, idx, 11), z_samples, t_samples, crosscheck, idx))
    return SuiteResult(seed, out)
