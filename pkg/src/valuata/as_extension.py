"""Degree-p extensions defined by the equation alpha**p - alpha = f.

Elements are coefficient vectors of length p over the base series field in
the basis 1, alpha, ..., alpha**(p-1); products reduce through the defining
equation.  The Galois action sends alpha to alpha + t for t = 0, ..., p-1,
norm and trace are computed as conjugate products and sums, and both are
cross-checkable against the determinant and trace of the multiplication
matrix, which is computed by plain Laplace expansion and shares nothing
with the conjugate route beyond ring arithmetic.

Valuations on the extension are computed through the norm: the valuation of
a is v(N(a))/p, living in the p-divided hull of the base value group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (InsufficientPrecisionError, ResidualAlphaComponentError,
                     TrivialExtensionError, UsageError)
from .hahn_series import SeriesElt, SeriesField
from .value_group import GroupElt


def _triviality_witness(field: SeriesField, f: SeriesElt):
    """Reason the equation splits over the base, or None.

    It splits when v(f) > 0 (Hensel), when f is an exact zero, and when
    v(f) = 0 with the residue of f of the form x**p - x, since shifting by
    the lift of x lands back in the v > 0 case.
    """
    if f.is_exact_zero():
        return "f is exactly zero"
    v = f.valuation()
    zero = field.group.zero()
    if v > zero:
        return f"v(f) = {v} > 0"
    if v == zero:
        x = field.residue.artin_schreier_preimage(f.residue_class())
        if x is not None:
            return f"residue of f equals x**p - x for x = {x}"
    return None


@dataclass(frozen=True)
class ASExtension:
    """The extension ring K[alpha] with alpha**p - alpha = f."""

    base: SeriesField
    f: SeriesElt

    def __post_init__(self):
        if self.f.field != self.base:
            raise UsageError("defining element lives in a different field")
        object.__setattr__(self, "_trivial", _triviality_witness(self.base, self.f))

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def trivial(self) -> bool:
        return self._trivial is not None

    def require_nontrivial(self):
        if self.trivial:
            raise TrivialExtensionError(
                f"the defining equation splits over the base: {self._trivial}")

    def from_coeffs(self, coeffs) -> "ExtElt":
        cs = list(coeffs)
        if len(cs) > self.p:
            raise UsageError("coefficient vector longer than the degree")
        cs += [self.base.zero()] * (self.p - len(cs))
        for c in cs:
            if c.field != self.base:
                raise UsageError("coefficient from a different base field")
        return ExtElt(self, tuple(cs))

    def from_base(self, c: SeriesElt) -> "ExtElt":
        return self.from_coeffs([c])

    def zero(self) -> "ExtElt":
        return self.from_coeffs([])

    def one(self) -> "ExtElt":
        return self.from_base(self.base.one())

    def alpha(self) -> "ExtElt":
        return self.from_coeffs([self.base.zero(), self.base.one()])


@dataclass(frozen=True)
class ExtElt:
    """Element of an ASExtension in the power basis of alpha."""

    ext: ASExtension
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, ExtElt):
            raise TypeError(f"cannot combine ExtElt with {type(other).__name__}")
        if other.ext != self.ext:
            raise UsageError("elements of different extensions")

    def __add__(self, other):
        self._check(other)
        return ExtElt(self.ext, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return ExtElt(self.ext, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ExtElt(self.ext, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        p = self.ext.p
        base = self.ext.base
        prod = [base.zero()] * (2 * p - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            # zero to precision still carries its bound into the product
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        # alpha**p = alpha + f, folded from the top degree down
        for d in range(2 * p - 2, p - 1, -1):
            top = prod[d]
            if top.is_exact_zero():
                continue
            prod[d] = base.zero()
            prod[d - p + 1] = prod[d - p + 1] + top
            prod[d - p] = prod[d - p] + top * self.ext.f
        return ExtElt(self.ext, tuple(prod[:p]))

    def scale_base(self, c: SeriesElt) -> "ExtElt":
        return ExtElt(self.ext, tuple(a * c for a in self.coeffs))

    def is_base(self) -> bool:
        """No visible term above the constant coefficient."""
        return all(not c.has_terms() for c in self.coeffs[1:])

    def constant(self) -> SeriesElt:
        return self.coeffs[0]

    # -- Galois action -------------------------------------------------------

    def sigma(self, power: int = 1) -> "ExtElt":
        """The generator of the Galois action, alpha -> alpha + power."""
        ext = self.ext
        p = ext.p
        t = power % p
        if t == 0:
            return self
        base = ext.base
        out = [base.zero()] * p
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                continue
            # c * (alpha + t)**i, binomials taken mod p
            for j in range(i + 1):
                scalar = (math.comb(i, j) * pow(t, i - j, p)) % p
                if scalar:
                    out[j] = out[j] + c.scale_int(scalar)
        return ExtElt(ext, tuple(out))

    # -- norm, trace, valuation ----------------------------------------------

    def _symmetric_part(self, value: "ExtElt", what: str) -> SeriesElt:
        for c in value.coeffs[1:]:
            if c.has_terms():
                raise ResidualAlphaComponentError(
                    f"{what} kept a visible alpha component: {c}")
        return value.coeffs[0]

    def norm(self) -> SeriesElt:
        """Product of the p conjugates; lands in the base field."""
        self.ext.require_nontrivial()
        acc = self
        for i in range(1, self.ext.p):
            acc = acc * self.sigma(i)
        return self._symmetric_part(acc, "norm")

    def trace(self) -> SeriesElt:
        """Sum of the p conjugates; lands in the base field."""
        self.ext.require_nontrivial()
        acc = self
        for i in range(1, self.ext.p):
            acc = acc + self.sigma(i)
        return self._symmetric_part(acc, "trace")

    def multiplication_matrix(self):
        """Rows i, columns j: coefficient of alpha**i in self * alpha**j."""
        ext = self.ext
        cols = []
        power = ext.one()
        alpha = ext.alpha()
        for _ in range(ext.p):
            cols.append((self * power).coeffs)
            power = power * alpha
        return [tuple(cols[j][i] for j in range(ext.p)) for i in range(ext.p)]

    def norm_via_matrix(self) -> SeriesElt:
        """Determinant of the multiplication matrix, by Laplace expansion."""
        self.ext.require_nontrivial()
        return _det(self.ext.base, self.multiplication_matrix())

    def trace_via_matrix(self) -> SeriesElt:
        self.ext.require_nontrivial()
        m = self.multiplication_matrix()
        acc = self.ext.base.zero()
        for i in range(self.ext.p):
            acc = acc + m[i][i]
        return acc

    def valuation_L(self) -> GroupElt:
        """Valuation in the p-divided hull of the base group: v(N(a))/p."""
        return self.norm().valuation().divide(self.ext.p)

    def invert(self, target: GroupElt | None = None) -> "ExtElt":
        """Inverse: product of the other conjugates over the norm."""
        self.ext.require_nontrivial()
        acc = self.sigma(1)
        for i in range(2, self.ext.p):
            acc = acc * self.sigma(i)
        full = acc * self
        n = self._symmetric_part(full, "norm")
        return acc.scale_base(n.invert(target))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.has_terms() and c.is_exact_zero():
                continue
            body = str(c)
            name = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            parts.append(f"({body})" + (f"*{name}" if name else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ExtElt({self})"


def _det(base: SeriesField, rows) -> SeriesElt:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = base.zero()
    for i in range(n):
        minor = [row[1:] for k, row in enumerate(rows) if k != i]
        term = rows[i][0] * _det(base, minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def mu_valuation_formula(ext: ASExtension, coeffs_in_mu) -> GroupElt:
    """Valuation of sum(x_i * mu**i) predicted by the minimum formula, where
    mu = alpha * g is the rescaled generator of valuation zero.

    Shipped as a testable alternative for ferocious extensions; the norm
    route stays the uniform implementation.
    """
    vals = []
    for x in coeffs_in_mu:
        if x.has_terms():
            vals.append(x.valuation())
        elif not x.is_exact_zero():
            raise InsufficientPrecisionError("coefficient is zero to precision")
    if not vals:
        raise UsageError("the zero vector has no valuation")
    return min(vals)
