"""Additive polynomials f = sum a_i X^(p^i) and the objects derived from them.

An additive polynomial satisfies f(x+y) = f(x)+f(y); in characteristic p
these are exactly the p-power-exponent polynomials.  Since f' = f'(0) = a_0,
f is squarefree iff a_0 != 0.  From f we build F = X*f(X), its even part A
with A(X^2) = F, the half-degree companion fh with X*fh(X^2) = f + X*f'(0),
the nonzero critical values of F, and the Morse test for A.
"""

from __future__ import annotations

from math import lcm
from typing import NamedTuple

from .gf import Elem, FieldSpec, FieldError
from . import unipoly
from .unipoly import UniPoly


class AdditivePoly:
    """Coefficient vector (a_0, ..., a_m) denoting sum a_i X^(p^i), a_m != 0."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: FieldSpec):
        coeffs = [field.elem(c) if not isinstance(c, Elem) else c for c in coeffs]
        for c in coeffs:
            if c.field != field:
                raise FieldError("coefficient from a different field")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            raise ValueError("the zero additive polynomial is not supported")
        self.coeffs = tuple(coeffs)
        self.field = field

    @property
    def m(self) -> int:
        """Largest Frobenius exponent: deg f = p^m."""
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return self.field.p**self.m

    def fprime0(self) -> Elem:
        """f'(0) = a_0; f' is this constant everywhere."""
        return self.coeffs[0]

    def is_squarefree(self) -> bool:
        return not self.coeffs[0].is_zero()

    def to_unipoly(self) -> UniPoly:
        out = [self.field.zero()] * (self.degree + 1)
        for i, a in enumerate(self.coeffs):
            out[self.field.p**i] = a
        return UniPoly(out, self.field)

    def __call__(self, x: Elem) -> Elem:
        return self.to_unipoly().evaluate(x)

    def __eq__(self, other):
        return (
            isinstance(other, AdditivePoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field.p, self.field.k))

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"AdditivePoly(({self}), {self.field!r})"


def parse_additive(a: UniPoly) -> AdditivePoly:
    """Read off the p-power coefficient vector; reject other exponents."""
    if a.is_zero():
        raise ValueError("the zero polynomial is not additive in a useful sense")
    p = a.field.p
    vec = {}
    for e in range(len(a.coeffs)):
        c = a.coeffs[e]
        if c.is_zero():
            continue
        n, i = e, 0
        while n > 1 and n % p == 0:
            n //= p
            i += 1
        if n != 1:
            raise ValueError(f"exponent {e} is not a power of p = {p}")
        vec[i] = c
    coeffs = [vec.get(i, a.field.zero()) for i in range(max(vec) + 1)]
    return AdditivePoly(coeffs, a.field)


def xf_build(f: AdditivePoly) -> UniPoly:
    """F(X) = X*f(X), of degree p^m + 1."""
    return f.to_unipoly().shift(1)


def even_part(F: UniPoly) -> UniPoly:
    """A with A(X^2) = F; every exponent of F must be even."""
    for e in range(1, len(F.coeffs), 2):
        if not F.coeffs[e].is_zero():
            raise ValueError(f"exponent {e} is odd; no even part exists")
    return UniPoly(list(F.coeffs[::2]), F.field)


def fhat(f: AdditivePoly) -> UniPoly:
    """The companion fh with X*fh(X^2) = f(X) + X*f'(0).

    fh has degree (deg f - 1)/2, constant term 2*f'(0), and is squarefree
    whenever f is.
    """
    if not f.is_squarefree():
        raise ValueError("f'(0) = 0: f is not squarefree")
    p = f.field.p
    out = [f.field.zero()] * ((f.degree - 1) // 2 + 1)
    out[0] = f.coeffs[0] + f.coeffs[0]
    for i in range(1, len(f.coeffs)):
        out[(p**i - 1) // 2] = f.coeffs[i]
    return UniPoly(out, f.field)


class CriticalValues(NamedTuple):
    """Nonzero finite critical values of F, tagged with their minimal
    extension degree over the base field; out_of_range counts roots of fh
    living beyond max_ext."""

    values: tuple
    out_of_range: int


def critical_values(f: AdditivePoly, max_ext: int | None = None) -> CriticalValues:
    """Critical values of F = X*f(X): -b*f'(0) for each root b of fh.

    Roots are gathered per irreducible factor of fh, each of degree d inside
    the canonical extension GF(q^d); only d <= max_ext (default m) is
    searched.  Values are deduplicated and sorted by (d, element index).
    """
    if not f.is_squarefree():
        raise ValueError("f'(0) = 0: f is not squarefree")
    if max_ext is None:
        max_ext = f.m
    fh = fhat(f)
    if fh.degree < 1:
        return CriticalValues((), 0)
    a0 = f.fprime0()
    found = set()
    skipped = 0
    for fac, _mult in unipoly.factor(fh):
        d = fac.degree
        if d > max_ext:
            skipped += d
            continue
        for beta in unipoly.roots_in_extension(fac, d):
            value = -(beta * unipoly.embed(a0, beta.field))
            found.add((d, value))
    values = tuple(sorted(found, key=lambda dv: (dv[0], dv[1].index)))
    return CriticalValues(values, skipped)


def is_morse(A: UniPoly) -> bool:
    """Morse test: A' squarefree of degree deg(A)-1, and A injective on the
    roots of A'.

    Roots are gathered in one splitting-field extension GF(q^L), L the lcm
    of the irreducible factor degrees of A', so the images are comparable.
    """
    if A.is_constant():
        raise ValueError("Morse test needs deg A >= 1")
    if A.degree % A.field.p == 0:
        raise ValueError("characteristic divides deg A; Morse test undefined here")
    Ad = A.derivative()
    if Ad.degree != A.degree - 1:
        return False
    if A.degree == 1:
        return True
    factors = unipoly.factor(Ad)
    if any(mult > 1 for _fac, mult in factors):
        return False
    L = lcm(*(fac.degree for fac, _ in factors))
    roots = unipoly.roots_in_extension(Ad, L)
    if len(roots) != Ad.degree:
        return False
    ext = roots[0].field
    lifted = unipoly.lift(A, ext) if ext != A.field else A
    images = [lifted.evaluate(r) for r in roots]
    return len({im.coeffs for im in images}) == len(images)
