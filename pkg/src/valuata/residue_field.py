"""Residue fields of characteristic p, with exact decision procedures.

Two kinds are available.  ``GF(p, m)`` is the finite field with p**m elements,
represented as polynomials in a generator w modulo a monic irreducible
modulus over GF(p); moduli for the common small sizes are built in and any
other size takes a caller-supplied modulus.  ``RatFunc(gf)`` is the rational
function field over a finite field in the indeterminate y, represented as
reduced fractions with monic denominator.  RatFunc fields are imperfect,
which is what makes the ferocious classification cases reachable.

Beyond the ring operations each field decides, exactly:

* ``pth_root(c)``: in GF(q) every element has the root c**(q/p).  In RatFunc
  a reduced fraction is a p-th power iff numerator and denominator each have
  all monomial exponents divisible by p (coefficients take roots for free in
  a finite field), because Frobenius is additive in characteristic p.
* ``artin_schreier_preimage(c)``: solve x**p - x = c.  Over GF(q) a solution
  exists iff the absolute trace of c vanishes, and is found by direct search
  (fields here are desk sized).  Over RatFunc the denominator of c must be a
  perfect p-th power d**p, any solution is n/d with deg(n) bounded by
  max(deg num, deg den)/p + 1, and the bounded problem is GF(p)-linear in
  the coefficients of n; we solve it by Gaussian elimination and verify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError

# Monic irreducible moduli over GF(p), low degree first, as int coefficient
# tuples: q -> (c0, c1, ..., 1).  Used when the caller does not supply one.
DEFAULT_MODULI = {
    4: (1, 1, 1),          # w^2 + w + 1 over GF(2)
    8: (1, 1, 0, 1),       # w^3 + w + 1 over GF(2)
    9: (1, 0, 1),          # w^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),   # w^4 + w + 1 over GF(2)
    25: (1, 1, 1),         # w^2 + w + 1 over GF(5)
    27: (1, 2, 0, 1),      # w^3 + 2w + 1 over GF(3)
}


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class GFElt:
    """Element of GF(p**m): coefficients of 1, w, ..., w^(m-1) over GF(p)."""

    field: "GF"
    coeffs: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, GFElt):
            raise TypeError(f"cannot combine GFElt with {type(other).__name__}")
        if other.field != self.field:
            raise UsageError("elements of different residue fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return GFElt(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return GFElt(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return GFElt(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return self.field._mul(self, other)

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def is_zero(self):
        return all(a == 0 for a in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.field.format_elt(self)

    def __repr__(self):
        return f"GFElt({self})"


@dataclass(frozen=True)
class GF:
    """The finite field GF(p**m) with a fixed monic irreducible modulus."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not _is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        if self.m < 1:
            raise UsageError("extension degree must be positive")
        if self.m == 1:
            object.__setattr__(self, "modulus", (0, 1))
            return
        mod = self.modulus
        if not mod:
            q = self.p ** self.m
            if q not in DEFAULT_MODULI:
                raise UsageError(
                    f"no built-in modulus for q={q}; pass one explicitly")
            mod = DEFAULT_MODULI[q]
        mod = tuple(c % self.p for c in mod)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise UsageError("modulus must be monic of degree m")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def kind(self) -> str:
        return f"gf:{self.q}"

    def elt(self, coeffs) -> GFElt:
        cs = [c % self.p for c in coeffs]
        cs += [0] * (self.m - len(cs))
        if len(cs) != self.m:
            raise UsageError("too many coefficients for the field degree")
        return GFElt(self, tuple(cs))

    def zero(self) -> GFElt:
        return self.elt([0])

    def one(self) -> GFElt:
        return self.elt([1])

    def from_int(self, n: int) -> GFElt:
        return self.elt([n % self.p])

    def gen(self) -> GFElt:
        """The class of w; equals 1 when m = 1."""
        if self.m == 1:
            return self.one()
        return self.elt([0, 1])

    def elements(self):
        """All q elements, in a fixed lexicographic order."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield GFElt(self, coeffs)

    def _mul(self, a: GFElt, b: GFElt) -> GFElt:
        p = self.p
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the modulus, top down
        for d in range(len(prod) - 1, self.m - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(self.m):
                    prod[d - self.m + j] = (prod[d - self.m + j] - c * self.modulus[j]) % p
        return GFElt(self, tuple(prod[: self.m]))

    def pow(self, a: GFElt, n: int) -> GFElt:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self, a: GFElt) -> GFElt:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in a residue field")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: GFElt) -> GFElt:
        return self.pow(a, self.p)

    def pth_root(self, a: GFElt) -> GFElt:
        """Always exists: Frobenius is a bijection with inverse c -> c**(q/p)."""
        return self.pow(a, self.q // self.p)

    def trace_to_prime(self, a: GFElt) -> int:
        """Absolute trace down to GF(p), returned as an integer mod p."""
        acc = self.zero()
        x = a
        for _ in range(self.m):
            acc = acc + x
            x = self.frobenius(x)
        if any(c for c in acc.coeffs[1:]):
            raise UsageError("trace left the prime field; modulus is not irreducible")
        return acc.coeffs[0]

    def artin_schreier_preimage(self, c: GFElt) -> GFElt | None:
        """Some x with x**p - x = c, or None.

        Solvable iff the absolute trace of c is zero; the witness is found by
        direct search, which is fine at the field sizes this package targets.
        The returned solution is the first in the fixed element order, so the
        result is deterministic.
        """
        if self.trace_to_prime(c) != 0:
            return None
        for x in self.elements():
            if self.pow(x, self.p) - x == c:
                return x
        raise UsageError("trace-zero element without preimage; inconsistent field data")

    def format_elt(self, a: GFElt) -> str:
        parts = []
        for i, c in enumerate(a.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "w" if i == 1 else f"w^{i}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# polynomials over GF(q): tuples of GFElt without trailing zeros
# ---------------------------------------------------------------------------

def poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


def poly_zero():
    return ()


def poly_const(c: GFElt):
    return poly_trim([c])


def poly_deg(a) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(a) - 1


def poly_is_zero(a) -> bool:
    return len(a) == 0


def poly_add(field, a, b):
    n = max(len(a), len(b))
    z = field.zero()
    return poly_trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                      for i in range(n)])


def poly_neg(field, a):
    return tuple(-c for c in a)


def poly_sub(field, a, b):
    return poly_add(field, a, poly_neg(field, b))


def poly_mul(field, a, b):
    if not a or not b:
        return poly_zero()
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_scale(field, a, c: GFElt):
    return poly_trim([x * c for x in a])


def poly_divmod(field, a, b):
    if poly_is_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    while len(r) >= len(b) and not all(c.is_zero() for c in r):
        r = list(poly_trim(r))
        if len(r) < len(b):
            break
        shift = len(r) - len(b)
        factor = r[-1] * inv_lead
        q[shift] = q[shift] + factor
        for i, c in enumerate(b):
            r[shift + i] = r[shift + i] - factor * c
    return poly_trim(q), poly_trim(r)


def poly_monic(field, a):
    if poly_is_zero(a):
        return a
    return poly_scale(field, a, field.inv(a[-1]))


def poly_gcd(field, a, b):
    while not poly_is_zero(b):
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    return poly_monic(field, a)


def poly_eval(field, a, x: GFElt) -> GFElt:
    acc = field.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_deriv(field, a):
    return poly_trim([a[i] * field.from_int(i) for i in range(1, len(a))])


def poly_frobenius(field, a):
    """a(y)**p, using additivity of Frobenius: exponents stretch by p."""
    if poly_is_zero(a):
        return a
    out = [field.zero()] * ((len(a) - 1) * field.p + 1)
    for i, c in enumerate(a):
        out[i * field.p] = field.frobenius(c)
    return poly_trim(out)


def poly_pth_root(field, a):
    """The polynomial b with b**p = a, or None.

    Works coefficient by coefficient: a is a p-th power iff every exponent
    carrying a nonzero coefficient is divisible by p.
    """
    if poly_is_zero(a):
        return a
    p = field.p
    if (len(a) - 1) % p != 0:
        return None
    out = [field.zero()] * ((len(a) - 1) // p + 1)
    for i, c in enumerate(a):
        if c.is_zero():
            continue
        if i % p != 0:
            return None
        out[i // p] = field.pth_root(c)
    return poly_trim(out)


def _monic_polys(field, degree):
    """All monic polynomials of the given degree, fixed order."""
    for tail in itertools.product(field.elements(), repeat=degree):
        yield poly_trim(list(tail) + [field.one()])


@lru_cache(maxsize=None)
def _irreducibles_upto(field, degree):
    """Monic irreducibles of degree <= degree, found by sieving with smaller ones."""
    out = []
    for d in range(1, degree + 1):
        for cand in _monic_polys(field, d):
            if all(poly_divmod(field, cand, f)[1] for f in out if poly_deg(f) <= d // 2):
                out.append(cand)
    return tuple(out)


def poly_is_irreducible(field, a) -> bool:
    d = poly_deg(a)
    if d <= 0:
        return False
    if d == 1:
        return True
    for f in _irreducibles_upto(field, d // 2):
        if poly_is_zero(poly_divmod(field, a, f)[1]):
            return False
    return True


def poly_factor(field, a):
    """Monic irreducible factorization [(factor, multiplicity), ...].

    Utility quality: trial division against enumerated irreducibles, meant
    for the small degrees exercised here.  The unit is dropped after making
    the input monic.
    """
    if poly_is_zero(a):
        raise UsageError("cannot factor the zero polynomial")
    a = poly_monic(field, a)
    out = []
    d = poly_deg(a)
    for f in _irreducibles_upto(field, d):
        if poly_deg(a) < 1:
            break
        mult = 0
        while True:
            q, r = poly_divmod(field, a, f)
            if poly_is_zero(r) and not poly_is_zero(q):
                a, mult = q, mult + 1
            else:
                break
        if mult:
            out.append((f, mult))
    if poly_deg(a) >= 1:
        out.append((a, 1))
    return out


def poly_squarefree_part(field, a):
    """Product of the distinct irreducible factors."""
    result = poly_const(field.one())
    for f, _ in poly_factor(field, a):
        result = poly_mul(field, result, f)
    return result


# ---------------------------------------------------------------------------
# rational function fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFuncElt:
    """A reduced fraction num/den of polynomials in y, den monic."""

    field: "RatFunc"
    num: tuple
    den: tuple

    def _check(self, other):
        if not isinstance(other, RatFuncElt):
            raise TypeError(f"cannot combine RatFuncElt with {type(other).__name__}")
        if other.field != self.field:
            raise UsageError("elements of different residue fields")

    def __add__(self, other):
        self._check(other)
        gf = self.field.base
        num = poly_add(gf, poly_mul(gf, self.num, other.den),
                       poly_mul(gf, other.num, self.den))
        return self.field._reduced(num, poly_mul(gf, self.den, other.den))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFuncElt(self.field, poly_neg(self.field.base, self.num), self.den)

    def __mul__(self, other):
        self._check(other)
        gf = self.field.base
        return self.field._reduced(poly_mul(gf, self.num, other.num),
                                   poly_mul(gf, self.den, other.den))

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def is_zero(self):
        return poly_is_zero(self.num)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.field.format_elt(self)

    def __repr__(self):
        return f"RatFuncElt({self})"


@dataclass(frozen=True)
class RatFunc:
    """GF(q)(y), the rational functions over a finite field.  Imperfect."""

    base: GF

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def kind(self) -> str:
        return f"ratfunc:{self.base.q}"

    def _reduced(self, num, den) -> RatFuncElt:
        gf = self.base
        if poly_is_zero(den):
            raise ZeroDivisionError("zero denominator")
        if poly_is_zero(num):
            return RatFuncElt(self, poly_zero(), poly_const(gf.one()))
        g = poly_gcd(gf, num, den)
        if poly_deg(g) > 0:
            num = poly_divmod(gf, num, g)[0]
            den = poly_divmod(gf, den, g)[0]
        lead = den[-1]
        if not (lead - gf.one()).is_zero():
            inv = gf.inv(lead)
            num = poly_scale(gf, num, inv)
            den = poly_scale(gf, den, inv)
        return RatFuncElt(self, num, den)

    def from_polys(self, num, den) -> RatFuncElt:
        return self._reduced(poly_trim(num), poly_trim(den))

    def zero(self) -> RatFuncElt:
        return self._reduced(poly_zero(), poly_const(self.base.one()))

    def one(self) -> RatFuncElt:
        return self.from_base(self.base.one())

    def from_int(self, n: int) -> RatFuncElt:
        return self.from_base(self.base.from_int(n))

    def from_base(self, c: GFElt) -> RatFuncElt:
        return self._reduced(poly_const(c), poly_const(self.base.one()))

    def gen(self) -> RatFuncElt:
        return self._reduced((self.base.zero(), self.base.one()),
                             poly_const(self.base.one()))

    def inv(self, a: RatFuncElt) -> RatFuncElt:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in a residue field")
        return self._reduced(a.den, a.num)

    def pow(self, a: RatFuncElt, n: int) -> RatFuncElt:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, a: RatFuncElt) -> RatFuncElt:
        gf = self.base
        return self._reduced(poly_frobenius(gf, a.num), poly_frobenius(gf, a.den))

    def pth_root(self, a: RatFuncElt) -> RatFuncElt | None:
        """Root of a reduced fraction, or None when a is not a p-th power.

        A reduced fraction is a p-th power exactly when numerator and
        denominator separately are: if (n/d)**p is reduced so is n**p/d**p,
        and reduced forms with monic denominator are unique.
        """
        if a.is_zero():
            return a
        num = poly_pth_root(self.base, a.num)
        if num is None:
            return None
        den = poly_pth_root(self.base, a.den)
        if den is None:
            return None
        return self._reduced(num, den)

    def artin_schreier_degree_bound(self, c: RatFuncElt) -> int:
        """Documented degree bound for preimage numerators; see the solver."""
        return max(poly_deg(c.num), poly_deg(c.den)) // self.p + 1

    def artin_schreier_preimage(self, c: RatFuncElt) -> RatFuncElt | None:
        """Some x with x**p - x = c, or None.

        Any solution written in lowest terms n/d with d monic forces
        d**p = den(c): the map x -> x**p - x sends n/d to
        (n**p - n d**(p-1)) / d**p, and that fraction is already reduced.  So
        the denominator is determined by a polynomial p-th root, and the
        numerator satisfies the GF(p)-linear equation
        n**p - n d**(p-1) = num(c) with deg n <= artin_schreier_degree_bound:
        pB = deg num when n dominates, deg n <= deg d otherwise.  We solve
        the bounded linear system over GF(p), coefficientwise in a GF(p)
        basis of GF(q), and verify the witness before returning it.
        """
        gf = self.base
        p, mdeg = gf.p, gf.m
        if c.is_zero():
            return self.zero()
        den_root = poly_pth_root(gf, c.den)
        if den_root is None:
            return None
        d = den_root
        bound = self.artin_schreier_degree_bound(c)
        dpow = poly_const(gf.one())
        for _ in range(p - 1):
            dpow = poly_mul(gf, d, dpow)

        def phi(npoly):
            return poly_sub(gf, poly_frobenius(gf, npoly), poly_mul(gf, npoly, dpow))

        # unknown coefficients of n: (degree t, basis index b) -> GF(p)
        cols = []
        basis_elts = [gf.elt([0] * b + [1]) for b in range(mdeg)]
        max_len = 0
        images = []
        for t in range(bound + 1):
            for e in basis_elts:
                img = phi(poly_trim([gf.zero()] * t + [e]))
                images.append(img)
                max_len = max(max_len, len(img))
        target = c.num
        max_len = max(max_len, len(target))
        nrows = max_len * mdeg
        for img in images:
            col = []
            for i in range(max_len):
                coeff = img[i] if i < len(img) else gf.zero()
                col.extend(coeff.coeffs)
            cols.append(col)
        rhs = []
        for i in range(max_len):
            coeff = target[i] if i < len(target) else gf.zero()
            rhs.extend(coeff.coeffs)
        solution = _solve_mod_p(cols, rhs, nrows, p)
        if solution is None:
            return None
        ncoeffs = [gf.zero()] * (bound + 1)
        idx = 0
        for t in range(bound + 1):
            acc = gf.zero()
            for e in basis_elts:
                if solution[idx]:
                    acc = acc + e * gf.from_int(solution[idx])
                idx += 1
            ncoeffs[t] = acc
        x = self.from_polys(ncoeffs, d)
        if (self.pow(x, p) - x) - c:
            raise UsageError("linear solve produced a bad preimage; solver bug")
        return x

    def format_elt(self, a: RatFuncElt) -> str:
        num = _format_poly(self.base, a.num)
        if poly_deg(a.den) < 1 and (not a.den or (a.den[0] - self.base.one()).is_zero()):
            return num
        return f"({num})/({_format_poly(self.base, a.den)})"


def _format_poly(field, a) -> str:
    if poly_is_zero(a):
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c.is_zero():
            continue
        cs = field.format_elt(c)
        if i == 0:
            parts.append(cs if ("+" not in cs and "*" not in cs) else f"({cs})")
            continue
        var = "y" if i == 1 else f"y^{i}"
        if cs == "1":
            parts.append(var)
        elif "+" in cs or "*" in cs:
            parts.append(f"({cs})*{var}")
        else:
            parts.append(f"{cs}*{var}")
    return " + ".join(parts)


def _solve_mod_p(cols, rhs, nrows, p):
    """Solve A x = rhs mod p where A is given by columns; None if inconsistent.

    Plain Gaussian elimination; returns one deterministic solution with free
    variables set to zero.
    """
    ncols = len(cols)
    rows = [[(cols[j][i] if i < len(cols[j]) else 0) % p for j in range(ncols)]
            + [rhs[i] % p if i < len(rhs) else 0] for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None
    solution = [0] * ncols
    for i, col in enumerate(pivots):
        solution[col] = rows[i][ncols]
    return solution
