"""Surface invariants and the cup-product tensor.

A surface enters the toolkit only through its Hodge numbers ``q`` and
``p = p_g`` and the structure constants of the wedge map
``H^1(O_X) x H^1(O_X) -> H^2(O_X)``::

    phi_j ^ phi_k = sum_i a[i, j, k] psi_i,      a[i, j, k] = -a[i, k, j].

Only the slots with ``j < k`` are stored; everything else is completed on
demand.  Indices are 1-based throughout, including the file format.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .linalg import format_rational, parse_rational
from .sampling import rng_for

Index = tuple[int, int, int]


class SpecError(Exception):
    """Base class for problems with a surface spec."""


class SpecParseError(SpecError):
    """Malformed document. ``location`` names the line or field at fault."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SpecValidationError(SpecError):
    """Well-formed document whose tensor does not fit the declared (p, q)."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class CupTensor:
    """Sparse alternating tensor ``a[i, j, k]``, ``1 <= i <= p``, ``1 <= j, k <= q``.

    Constructing the dataclass directly stores ``entries`` verbatim, which is
    how malformed tensors are produced for tests.  Use :meth:`from_entries`
    for checked construction.
    """

    p: int
    q: int
    entries: Mapping[Index, Fraction] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, p: int, q: int, entries: Mapping[Index, object] = ()) -> "CupTensor":
        if p < 0 or q < 0:
            raise ValueError("p and q must be non-negative")
        clean: dict[Index, Fraction] = {}
        for (i, j, k), value in dict(entries).items():
            if j >= k:
                raise ValueError(
                    f"entry ({i},{j},{k}): indices must satisfy j<k "
                    "(only j<k is stored; a_ikj = -a_ijk is implied)"
                )
            if not (1 <= i <= p and 1 <= k <= q and j >= 1):
                raise IndexError(f"entry ({i},{j},{k}) outside p={p}, q={q}")
            value = Fraction(value)
            if value:
                clean[(i, j, k)] = value
        return cls(p, q, dict(sorted(clean.items())))

    def __getitem__(self, idx: Index) -> Fraction:
        """Completed value: stored entries win, missing mirrors are negated."""
        i, j, k = idx
        if idx in self.entries:
            return Fraction(self.entries[idx])
        if (i, k, j) in self.entries:
            return -Fraction(self.entries[(i, k, j)])
        return Fraction(0)

    def slice(self, i: int) -> list[list[Fraction]]:
        """The q x q matrix ``(a[i, j, k])_{j,k}`` for 1-based ``i``."""
        return [[self[i, j, k] for k in range(1, self.q + 1)] for j in range(1, self.q + 1)]

    def dense(self) -> list[list[list[Fraction]]]:
        return [self.slice(i) for i in range(1, self.p + 1)]

    def is_zero(self) -> bool:
        return not any(self.entries.values())


@dataclass(frozen=True)
class Intersection:
    kx_kx: int
    gamma_gamma: Optional[int] = None
    gamma_k: Optional[int] = None

    def as_dict(self) -> dict:
        d = {"kx_kx": self.kx_kx}
        if self.gamma_gamma is not None:
            d["gamma_gamma"] = self.gamma_gamma
        if self.gamma_k is not None:
            d["gamma_k"] = self.gamma_k
        return d


@dataclass(frozen=True)
class SurfaceSpec:
    label: str
    tensor: CupTensor
    intersection: Optional[Intersection] = None

    @property
    def q(self) -> int:
        return self.tensor.q

    @property
    def p(self) -> int:
        return self.tensor.p

    @property
    def chi(self) -> int:
        return euler_characteristic(self)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(tensor: CupTensor) -> ValidationReport:
    """Check index ranges and that the completed tensor is alternating."""
    found = []
    if tensor.p < 0 or tensor.q < 0:
        found.append(f"negative dimensions p={tensor.p}, q={tensor.q}")
    for (i, j, k) in tensor.entries:
        if not (1 <= i <= tensor.p and 1 <= j <= tensor.q and 1 <= k <= tensor.q):
            found.append(f"entry ({i},{j},{k}) out of range for p={tensor.p}, q={tensor.q}")
    for i in range(1, tensor.p + 1):
        for j in range(1, tensor.q + 1):
            if tensor[i, j, j] != 0:
                found.append(f"a({i},{j},{j}) = {format_rational(tensor[i, j, j])} is not zero")
            for k in range(j + 1, tensor.q + 1):
                s = tensor[i, j, k] + tensor[i, k, j]
                if s != 0:
                    found.append(
                        f"antisymmetry broken at ({i},{j},{k})/({i},{k},{j}): "
                        f"a({i},{j},{k}) + a({i},{k},{j}) = {format_rational(s)}"
                    )
    return ValidationReport(tuple(found))


def euler_characteristic(spec: SurfaceSpec) -> int:
    """chi(O_X) = 1 - q + p."""
    return 1 - spec.q + spec.p


def virtual_dimension(gamma_gamma: int, gamma_k: int) -> int:
    """Expected dimension gamma.(gamma - k_X) of the Hilbert scheme of divisors in class gamma."""
    return gamma_gamma - gamma_k


# --- generators -----------------------------------------------------------

def product_of_curves(g1: int, g2: int) -> SurfaceSpec:
    """Kunneth model of ``C1 x C2`` with curves of genus ``g1`` and ``g2``.

    H^1 is ordered alpha_1..alpha_g1, beta_1..beta_g2; H^2 = H^1(C1) (x) H^1(C2)
    has basis psi_(a,b) in lexicographic order, and the only nonzero products
    are alpha_a ^ beta_b = psi_(a,b).
    """
    if g1 < 0 or g2 < 0:
        raise ValueError("genera must be non-negative")
    entries = {}
    for a in range(1, g1 + 1):
        for b in range(1, g2 + 1):
            entries[((a - 1) * g2 + b, a, g1 + b)] = 1
    tensor = CupTensor.from_entries(g1 * g2, g1 + g2, entries)
    return SurfaceSpec(
        label=f"C{g1} x C{g2}",
        tensor=tensor,
        intersection=Intersection(kx_kx=8 * (g1 - 1) * (g2 - 1)),
    )


def random_tensor(p: int, q: int, seed: int, density=Fraction(1, 2)) -> CupTensor:
    """Random alternating tensor with small nonzero integer entries in [-9, 9].

    Each slot ``(i, j<k)`` is filled independently with probability
    ``density``.  The draw is a pure function of the arguments.
    """
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = rng_for(seed, p, q)
    entries = {}
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            for k in range(j + 1, q + 1):
                hit = int(rng.integers(0, density.denominator)) < density.numerator
                v = int(rng.integers(0, 18))
                if hit:
                    entries[(i, j, k)] = v - 9 if v < 9 else v - 8
    return CupTensor.from_entries(p, q, entries)


def random_spec(p: int, q: int, seed: int, density=Fraction(1, 2)) -> SurfaceSpec:
    return SurfaceSpec(label=f"random p={p} q={q} seed={seed}", tensor=random_tensor(p, q, seed, density))


# --- serialization --------------------------------------------------------

_TOP_FIELDS = {"label", "q", "p", "tensor", "intersection"}
_ENTRY_FIELDS = {"i", "j", "k", "value"}
_INTERSECTION_FIELDS = {"kx_kx", "gamma_gamma", "gamma_k"}


def _int_field(obj: dict, key: str, where: str, required: bool = True) -> Optional[int]:
    if key not in obj:
        if required:
            raise SpecParseError(f"missing field {key!r}", where)
        return None
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecParseError(f"field {key!r} must be an integer, got {v!r}", f"{where}.{key}" if where else key)
    return v


def _check_fields(obj, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise SpecParseError("expected an object", where)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SpecParseError(f"unknown field(s) {', '.join(unknown)}", where)


def load_spec(text: str) -> SurfaceSpec:
    """Parse a JSON surface document.

    Raises :class:`SpecParseError` for syntax and convention problems and
    :class:`SpecValidationError` when entries fall outside the declared
    ``(p, q)``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    _check_fields(doc, _TOP_FIELDS, "document")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpecParseError("field 'label' must be a string", "label")
    q = _int_field(doc, "q", "")
    p = _int_field(doc, "p", "")
    if q < 0 or p < 0:
        raise SpecParseError("q and p must be non-negative", "q" if q < 0 else "p")
    raw = doc.get("tensor", [])
    if not isinstance(raw, list):
        raise SpecParseError("field 'tensor' must be an array", "tensor")

    entries: dict[Index, Fraction] = {}
    out_of_range = []
    for n, rec in enumerate(raw):
        where = f"tensor[{n}]"
        _check_fields(rec, _ENTRY_FIELDS, where)
        i, j, k = (_int_field(rec, key, where) for key in ("i", "j", "k"))
        if "value" not in rec:
            raise SpecParseError("missing field 'value'", where)
        value = rec["value"]
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise SpecParseError(f"value must be a string 'num/den' or 'num', got {value!r}", f"{where}.value")
        try:
            value = parse_rational(value) if isinstance(value, str) else Fraction(value)
        except ValueError as exc:
            raise SpecParseError(str(exc), f"{where}.value") from None
        if j >= k:
            raise SpecParseError(
                f"entry ({i},{j},{k}): indices must satisfy j<k "
                "(only j<k is stored; a_ikj = -a_ijk is implied)",
                where,
            )
        if (i, j, k) in entries:
            raise SpecParseError(f"duplicate entry ({i},{j},{k})", where)
        if not (1 <= i <= p and 1 <= j and k <= q):
            out_of_range.append(f"{where}: entry ({i},{j},{k}) out of range for p={p}, q={q}")
        entries[(i, j, k)] = value
    if out_of_range:
        raise SpecValidationError(out_of_range)

    intersection = None
    if doc.get("intersection") is not None:
        rec = doc["intersection"]
        _check_fields(rec, _INTERSECTION_FIELDS, "intersection")
        intersection = Intersection(
            kx_kx=_int_field(rec, "kx_kx", "intersection"),
            gamma_gamma=_int_field(rec, "gamma_gamma", "intersection", required=False),
            gamma_k=_int_field(rec, "gamma_k", "intersection", required=False),
        )
    return SurfaceSpec(label=label, tensor=CupTensor.from_entries(p, q, entries), intersection=intersection)


def spec_to_dict(spec: SurfaceSpec) -> dict:
    doc = {
        "label": spec.label,
        "q": spec.q,
        "p": spec.p,
        "tensor": [
            {"i": i, "j": j, "k": k, "value": format_rational(v)}
            for (i, j, k), v in sorted(spec.tensor.entries.items())
        ],
    }
    if spec.intersection is not None:
        doc["intersection"] = spec.intersection.as_dict()
    return doc


def dump_spec(spec: SurfaceSpec) -> str:
    """Canonical serialization; ``load_spec(dump_spec(s)) == s``."""
    return json.dumps(spec_to_dict(spec), indent=2, sort_keys=True) + "\n"


def read_spec(path) -> SurfaceSpec:
    with open(path, encoding="utf-8") as fh:
        return load_spec(fh.read())
