"""Sparse multivariate polynomials with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] = ()):
        self.nvars = nvars
        clean = {}
        for mono, c in dict(terms).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} exponents")
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        return cls(nvars, {tuple(int(n == index) for n in range(nvars)): 1})

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{n + 1}" + (f"^{e}" if e > 1 else "") for n, e in enumerate(m) if e)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    def diff(self, index: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                m2 = list(m)
                m2[index] = e - 1
                out[tuple(m2)] = c * e
        return Polynomial(self.nvars, out)
