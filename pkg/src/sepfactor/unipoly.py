"""Dense univariate polynomials over GF(p^k): arithmetic, gcd, factoring.

Coefficients are stored constant-term first with no trailing zeros; the zero
polynomial has degree NEG_INF.  Complete factorization runs squarefree
decomposition, distinct-degree factorization and seeded Cantor-Zassenhaus
equal-degree splitting (see czfactor for the packed engine behind it).

Polynomial literals use terms ``c*x^i`` joined by + or -, coefficients in
the element grammar of module gf, e.g. ``x^4 + 2*x^2 + (t+1)*x``.
"""

from __future__ import annotations

import functools

from . import czfactor
from .gf import Elem, FieldSpec, FieldError, ParseError, find_irreducible
from .gf import parse_elem, split_atoms, split_terms, _var_power

NEG_INF = float("-inf")


class UniPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of X^i."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: FieldSpec):
        coeffs = [field.elem(c) if not isinstance(c, Elem) else c for c in coeffs]
        for c in coeffs:
            if c.field != field:
                raise FieldError("coefficient from a different field")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.field = field

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls([], field)

    @classmethod
    def one(cls, field):
        return cls([1], field)

    @classmethod
    def x(cls, field):
        return cls([0, 1], field)

    @classmethod
    def constant(cls, c: Elem):
        return cls([c], c.field)

    @classmethod
    def monomial(cls, c: Elem, e: int):
        return cls([c.field.zero()] * e + [c], c.field)

    @classmethod
    def from_ints(cls, ints, field):
        return cls([field.elem(c) for c in ints], field)

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self) -> Elem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Elem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field.p, self.field.k))

    def sort_key(self):
        """Canonical ordering key: (degree, coefficient index tuple)."""
        return (len(self.coeffs), tuple(c.index for c in self.coeffs))

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if isinstance(other, Elem):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.field)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] - other[i] for i in range(n)], self.field)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.field)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.field)

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(self.field), self
        quo = [self.field.zero()] * (dq + 1)
        inv = other.leading().inv()
        for k in range(dq, -1, -1):
            if len(rem) == k + len(other.coeffs):
                c = rem[-1] * inv
                quo[k] = c
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
                while rem and rem[-1].is_zero():
                    rem.pop()
        return UniPoly(quo, self.field), UniPoly(rem, self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus and composition ---------------------------------------------

    def derivative(self):
        """Formal derivative in characteristic p."""
        return UniPoly(
            [self.coeffs[i] * self.field.elem(i) for i in range(1, len(self.coeffs))],
            self.field,
        )

    def evaluate(self, x: Elem) -> Elem:
        acc = x.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: UniPoly) -> UniPoly:
        """self(other(X)), by Horner on polynomial values."""
        other = self._check(other)
        acc = UniPoly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(c)
        return acc

    def scale(self, c: Elem) -> UniPoly:
        """Constant multiple c*self."""
        return UniPoly([c * a for a in self.coeffs], self.field)

    def shift(self, n: int) -> UniPoly:
        """Multiply by X^n."""
        if self.is_zero():
            return self
        return UniPoly([self.field.zero()] * n + list(self.coeffs), self.field)

    def monic(self) -> UniPoly:
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading()
        if lead == self.field.one():
            return self
        return self.scale(lead.inv())

    # -- formatting ------------------------------------------------------------

    def __str__(self):
        return format_terms([(i, c) for i, c in enumerate(self.coeffs)], "x")

    def __repr__(self):
        return f"UniPoly({self}, {self.field!r})"


def format_coeff(c: Elem, lead_var: str) -> str:
    """Coefficient prefix for a term in lead_var; '' when the coefficient is 1."""
    s = str(c)
    if s == "1":
        return ""
    if "+" in s:
        return f"({s})*"
    return f"{s}*"


def format_terms(terms, var: str) -> str:
    """Render (exponent, coefficient) pairs, highest exponent first."""
    parts = []
    for e, c in sorted(terms, reverse=True):
        if c.is_zero():
            continue
        if e == 0:
            parts.append(str(c))
        else:
            v = var if e == 1 else f"{var}^{e}"
            parts.append(format_coeff(c, var) + v)
    return "+".join(parts) if parts else "0"


def parse_unipoly(text: str, field: FieldSpec) -> UniPoly:
    """Parse the univariate grammar: terms c*x^i with element coefficients."""
    total = UniPoly.zero(field)
    for sign, term in split_terms(text):
        coeff = field.one()
        xpow = 0
        for atom in split_atoms(term):
            e = _var_power(atom, "x")
            if e is not None:
                xpow += e
                continue
            if atom.startswith("(") and atom.endswith(")"):
                coeff = coeff * parse_elem(atom[1:-1], field)
            else:
                coeff = coeff * parse_elem(atom, field)
        if sign < 0:
            coeff = -coeff
        total = total + UniPoly.monomial(coeff, xpow)
    return total


# ---------------------------------------------------------------------------
# gcd and factorization.


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.field != b.field:
        raise FieldError("polynomials over different fields")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(a: UniPoly) -> bool:
    """gcd(a, a') constant; in characteristic p also rejects p-th powers."""
    if a.is_constant():
        raise ValueError("squarefreeness of a constant is undefined")
    d = a.derivative()
    if d.is_zero():
        return False
    return gcd(a, d).is_constant()


def factor(a: UniPoly, seed: int = 0):
    """Complete factorization into monic irreducibles with multiplicities.

    Deterministic for a fixed seed: the equal-degree splitting draws from a
    generator initialized from seed.  The output is sorted by (degree,
    coefficient tuple) and its product times leading(a) equals a.
    """
    if a.is_constant():
        raise ValueError("cannot factor a constant polynomial")
    pairs = czfactor.factor_indices(a.field, [c.index for c in a.coeffs], seed)
    out = [
        (UniPoly([a.field.from_index(i) for i in coeffs], a.field), mult)
        for coeffs, mult in pairs
    ]
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


# ---------------------------------------------------------------------------
# Extension fields: canonical embeddings and root finding.


@functools.lru_cache(maxsize=None)
def _extension_field(p: int, degree: int) -> FieldSpec:
    """GF(p^degree) with the canonical modulus."""
    return FieldSpec(p, degree) if degree > 1 else FieldSpec(p, 1)


@functools.lru_cache(maxsize=None)
def _generator_image(src: FieldSpec, dst: FieldSpec) -> Elem:
    """Canonical image of src's generator t in dst: the lexicographically
    least root of src's modulus there."""
    base = FieldSpec(src.p, 1)
    modulus = UniPoly.from_ints(src.modulus, base)
    roots = roots_in_extension(lift(modulus, dst), 1)
    if not roots:
        raise FieldError(f"{dst!r} does not contain {src!r}")
    return min(roots, key=lambda r: r.coeffs)


def embed(a: Elem, dst: FieldSpec) -> Elem:
    """Canonical field embedding GF(p^k) -> GF(p^K) for k | K."""
    src = a.field
    if src == dst:
        return a
    if src.p != dst.p or dst.k % src.k != 0:
        raise FieldError(f"no embedding of {src!r} into {dst!r}")
    if src.k == 1:
        return dst.elem(a.coeffs[0])
    image = _generator_image(src, dst)
    acc = dst.zero()
    for c in reversed(a.coeffs):
        acc = acc * image + dst.elem(c)
    return acc


def lift(a: UniPoly, dst: FieldSpec) -> UniPoly:
    """Coefficientwise embedding of a into dst[X]."""
    return UniPoly([embed(c, dst) for c in a.coeffs], dst)


def roots_in_extension(a: UniPoly, d: int):
    """All roots of a in GF(p^(k*d)), via factoring the canonical lift.

    Returns elements of the extension field sorted by index.
    """
    if a.is_constant():
        raise ValueError("constant polynomial has no well-defined roots")
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    field = a.field
    ext = _extension_field(field.p, field.k * d) if field.k * d > 1 else FieldSpec(field.p, 1)
    if field.k * d == field.k and d == 1:
        ext = field
    lifted = a if ext == field else lift(a, ext)
    roots = []
    for fac, _mult in factor(lifted):
        if fac.degree == 1:
            roots.append(-fac.coeffs[0])
    roots.sort(key=lambda r: r.index)
    return roots
