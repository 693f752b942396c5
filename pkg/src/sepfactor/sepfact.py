"""Reducibility of X*f(X) - Y*g(Y) and its certified factorization.

For squarefree additive f, g over GF(q), q odd, the difference F(X) - G(Y)
with F = X*f(X), G = Y*g(Y) is reducible exactly when g is the scaling
delta*f(delta*Y) of f for some delta with delta^2 = c = g'(0)/f'(0) in the
base field, subject to the degree-one corner case.  Writing F = A(X^2) and
B(U,V) = (A(U)-A(V))/(U-V), the factorization is

    F(X) - G(Y) = (X - delta*Y) * (X + delta*Y) * B(X^2, c*Y^2)

with the two linear factors merged into X^2 - c*Y^2 when c is a nonsquare,
so the output is always K-rational.  Every factorization is re-expanded and
checked against F - G before it is returned.

Bivariate literals use terms ``c*x^i*y^j`` joined by + or -.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import Elem, FieldSpec, FieldError, is_square, sqrt
from .gf import parse_elem, split_atoms, split_terms, _var_power
from .unipoly import UniPoly, format_coeff
from . import unipoly
from .additive import AdditivePoly, even_part, xf_build


def _gl_key(exp):
    """Graded-lex order key (x before y) for an exponent pair."""
    return (exp[0] + exp[1], exp[0])


class BiPoly:
    """Sparse bivariate polynomial: terms maps (i, j) to the nonzero
    coefficient of X^i Y^j."""

    __slots__ = ("terms", "field")

    def __init__(self, terms, field: FieldSpec):
        clean = {}
        for (i, j), c in dict(terms).items():
            if not isinstance(c, Elem):
                c = field.elem(c)
            elif c.field != field:
                raise FieldError("coefficient from a different field")
            if not c.is_zero():
                clean[(int(i), int(j))] = c
        self.terms = clean
        self.field = field

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls({}, field)

    @classmethod
    def constant(cls, c: Elem):
        return cls({(0, 0): c}, c.field)

    @classmethod
    def linear(cls, cx: Elem, cy: Elem, field=None):
        """cx*X + cy*Y."""
        field = field or cx.field
        return cls({(1, 0): cx, (0, 1): cy}, field)

    @classmethod
    def from_unipoly(cls, a: UniPoly, var: str) -> BiPoly:
        if var not in ("x", "y"):
            raise ValueError("var must be 'x' or 'y'")
        terms = {}
        for e, c in enumerate(a.coeffs):
            if not c.is_zero():
                terms[(e, 0) if var == "x" else (0, e)] = c
        return cls(terms, a.field)

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(e == (0, 0) for e in self.terms)

    def deg_x(self):
        return max((i for i, _ in self.terms), default=0)

    def deg_y(self):
        return max((j for _, j in self.terms), default=0)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=0)

    def leading_term(self):
        """(exponent pair, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_gl_key)
        return exp, self.terms[exp]

    def evaluate(self, x: Elem, y: Elem) -> Elem:
        acc = self.field.zero()
        for (i, j), c in self.terms.items():
            acc = acc + c * x**i * y**j
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (frozenset((e, c.index) for e, c in self.terms.items()), self.field.p, self.field.k)
        )

    def __bool__(self):
        return bool(self.terms)

    def sort_key(self):
        """Canonical ordering: total degree, graded-lex exponents, coefficients."""
        ordered = sorted(self.terms.items(), key=lambda kv: _gl_key(kv[0]), reverse=True)
        return (
            self.total_degree(),
            tuple(e for e, _ in ordered),
            tuple(c.index for _, c in ordered),
        )

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, BiPoly):
            raise TypeError("expected a BiPoly")
        if other.field != self.field:
            raise FieldError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, self.field.zero()) + c
        return BiPoly(out, self.field)

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, self.field.zero()) - c
        return BiPoly(out, self.field)

    def __neg__(self):
        return BiPoly({e: -c for e, c in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, Elem):
            return self.scale(other)
        other = self._check(other)
        out = {}
        zero = self.field.zero()
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, zero) + c1 * c2
        return BiPoly(out, self.field)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = BiPoly.constant(self.field.one())
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Elem) -> BiPoly:
        return BiPoly({e: c * v for e, v in self.terms.items()}, self.field)

    def monic_normalize(self):
        """(unit, monic polynomial) with graded-lex leading coefficient 1."""
        _, lead = self.leading_term()
        if lead == self.field.one():
            return lead, self
        return lead, self.scale(lead.inv())

    def swap_vars(self) -> BiPoly:
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()}, self.field)

    def divide_exact(self, d: BiPoly):
        """Quotient when d divides self exactly, else None.

        Long division by the single divisor d in graded-lex order; for a
        multiple of d the leading term stays divisible at every step, so the
        first failure proves indivisibility.
        """
        d = self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return BiPoly.zero(self.field)
        (di, dj), dc = d.leading_term()
        dcinv = dc.inv()
        rem = dict(self.terms)
        quo = {}
        zero = self.field.zero()
        while rem:
            ri, rj = max(rem, key=_gl_key)
            qi, qj = ri - di, rj - dj
            if qi < 0 or qj < 0:
                return None
            qc = rem[(ri, rj)] * dcinv
            quo[(qi, qj)] = qc
            for (ti, tj), tc in d.terms.items():
                e = (qi + ti, qj + tj)
                v = rem.get(e, zero) - qc * tc
                if v.is_zero():
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return BiPoly(quo, self.field)

    # -- Kronecker substitution ------------------------------------------------

    def kronecker_image(self, e: int) -> UniPoly:
        """u(T) = P(T^e, T); injective on terms when deg_y < e."""
        out = {}
        for (i, j), c in self.terms.items():
            out[e * i + j] = out.get(e * i + j, self.field.zero()) + c
        coeffs = [self.field.zero()] * (max(out) + 1 if out else 0)
        for n, c in out.items():
            coeffs[n] = c
        return UniPoly(coeffs, self.field)

    @classmethod
    def from_kronecker(cls, u: UniPoly, e: int) -> BiPoly:
        """Base-e digit decode: T^n becomes X^(n//e) Y^(n%e)."""
        terms = {}
        for n, c in enumerate(u.coeffs):
            if not c.is_zero():
                terms[divmod(n, e)] = c
        return cls(terms, u.field)

    # -- formatting -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=_gl_key, reverse=True):
            c = self.terms[(i, j)]
            vars_part = []
            if i:
                vars_part.append("x" if i == 1 else f"x^{i}")
            if j:
                vars_part.append("y" if j == 1 else f"y^{j}")
            if not vars_part:
                parts.append(str(c))
            else:
                parts.append(format_coeff(c, "x") + "*".join(vars_part))
        return "+".join(parts)

    def __repr__(self):
        return f"BiPoly({self}, {self.field!r})"


def parse_bipoly(text: str, field: FieldSpec) -> BiPoly:
    """Parse the bivariate grammar: terms c*x^i*y^j with element coefficients."""
    total = BiPoly.zero(field)
    for sign, term in split_terms(text):
        coeff = field.one()
        xpow = 0
        ypow = 0
        for atom in split_atoms(term):
            e = _var_power(atom, "x")
            if e is not None:
                xpow += e
                continue
            e = _var_power(atom, "y")
            if e is not None:
                ypow += e
                continue
            if atom.startswith("(") and atom.endswith(")"):
                coeff = coeff * parse_elem(atom[1:-1], field)
            else:
                coeff = coeff * parse_elem(atom, field)
        if sign < 0:
            coeff = -coeff
        total = total + BiPoly({(xpow, ypow): coeff}, field)
    return total


# ---------------------------------------------------------------------------
# Verdicts and factorizations.


@dataclass(frozen=True)
class Verdict:
    """Outcome of the reducibility decision.

    c is always g'(0)/f'(0), the only possible delta^2.  For a reducible
    pair, delta is the canonical in-field square root of c when c is a
    square, and None when delta only exists in the quadratic extension
    (possible only in the deg f > 1 case).  case is "degree_one" or
    "higher" for reducible verdicts, None otherwise.
    """

    reducible: bool
    c: Elem
    delta: Elem | None = None
    case: str | None = None

    @property
    def delta_in_field(self) -> bool:
        return self.delta is not None


@dataclass(frozen=True)
class Factorization:
    """Certified factor list; the product over (factor, multiplicity) equals
    X*f(X) - Y*g(Y) exactly (re-verified at construction time).

    field_of_definition is "K" for the base-field factorization and
    "K(sqrt(c))" when the conjugate linear factors were materialized over
    the quadratic extension.
    """

    factors: tuple
    field: FieldSpec
    field_of_definition: str
    note: str | None = None

    def product(self) -> BiPoly:
        acc = BiPoly.constant(self.field.one())
        for h, mult in self.factors:
            acc = acc * h**mult
        return acc


# ---------------------------------------------------------------------------
# The decision procedure.


def _require_squarefree_pair(f: AdditivePoly, g: AdditivePoly):
    if f.field != g.field:
        raise FieldError("f and g live over different fields")
    if not f.is_squarefree():
        raise ValueError("f'(0) = 0: f violates the squarefree hypothesis")
    if not g.is_squarefree():
        raise ValueError("g'(0) = 0: g violates the squarefree hypothesis")


def delta_squared(f: AdditivePoly, g: AdditivePoly) -> Elem:
    """c = g'(0)/f'(0), the only possible value of delta^2."""
    _require_squarefree_pair(f, g)
    return g.fprime0() / f.fprime0()


def matches_scaling(f: AdditivePoly, g: AdditivePoly, c: Elem) -> bool:
    """Does g equal delta*f(delta*Y) for delta^2 = c?

    Coefficientwise this is b_i = a_i * c^((p^i+1)/2): the exponent p^i + 1
    is even, so the test never leaves the base field.
    """
    if f.field != g.field or c.field != f.field:
        raise FieldError("mismatched fields")
    if c.is_zero():
        raise ValueError("c must be nonzero")
    if f.m != g.m:
        return False
    p = f.field.p
    for i in range(f.m + 1):
        if g.coeffs[i] != f.coeffs[i] * c ** ((p**i + 1) // 2):
            return False
    return True


def decide(f: AdditivePoly, g: AdditivePoly) -> Verdict:
    """Is X*f(X) - Y*g(Y) reducible over the base field?

    Reducible iff g = delta*f(delta*Y) with delta^2 = c = g'(0)/f'(0), and
    additionally delta itself must lie in the base field when deg f = 1.
    """
    c = delta_squared(f, g)
    if not matches_scaling(f, g, c):
        return Verdict(False, c)
    square = is_square(c)
    delta = sqrt(c) if square else None
    if f.m >= 1:
        return Verdict(True, c, delta, "higher")
    if square:
        return Verdict(True, c, delta, "degree_one")
    return Verdict(False, c)


# ---------------------------------------------------------------------------
# Constructing the factorization.


def divided_difference(A: UniPoly) -> BiPoly:
    """B(U, V) = (A(U) - A(V)) / (U - V), expanded term by term."""
    if A.is_constant():
        raise ValueError("divided difference needs deg A >= 1")
    terms = {}
    zero = A.field.zero()
    for j in range(1, len(A.coeffs)):
        a = A.coeffs[j]
        if a.is_zero():
            continue
        for k in range(j):
            e = (k, j - 1 - k)
            terms[e] = terms.get(e, zero) + a
    return BiPoly(terms, A.field)


def expand_difference(f: AdditivePoly, g: AdditivePoly) -> BiPoly:
    """X*f(X) - Y*g(Y) as a bivariate polynomial."""
    if f.field != g.field:
        raise FieldError("f and g live over different fields")
    p = f.field.p
    terms = {}
    for i, a in enumerate(f.coeffs):
        if not a.is_zero():
            terms[(p**i + 1, 0)] = a
    for j, b in enumerate(g.coeffs):
        if not b.is_zero():
            terms[(0, p**j + 1)] = -b
    return BiPoly(terms, f.field)


def _compose_squares(B: BiPoly, c: Elem) -> BiPoly:
    """B(X^2, c*Y^2)."""
    return BiPoly(
        {(2 * i, 2 * j): coeff * c**j for (i, j), coeff in B.terms.items()},
        B.field,
    )


def _normalized(factors, field, unit=None):
    """Sort factors canonically and fold the overall unit into the first."""
    monics = []
    unit = unit if unit is not None else field.one()
    for h in factors:
        u, mono = h.monic_normalize()
        unit = unit * u
        monics.append(mono)
    monics.sort(key=BiPoly.sort_key)
    if unit != field.one():
        monics[0] = monics[0].scale(unit)
    return tuple((h, 1) for h in monics)


def factor_separated(f: AdditivePoly, g: AdditivePoly, over_extension: bool = False) -> Factorization:
    """The explicit factorization of X*f(X) - Y*g(Y) for a reducible pair.

    Over the base field K: two linear factors and B(X^2, c*Y^2) when
    delta = sqrt(c) exists in K; otherwise the conjugate linear pair merges
    into X^2 - c*Y^2.  With over_extension=True a nonsquare c is instead
    materialized in the quadratic extension GF(q^2), where the linear
    factors split.  The product is re-expanded and compared with F - G
    before returning.
    """
    verdict = decide(f, g)
    if not verdict.reducible:
        raise ValueError("factor_separated called on an irreducible pair")
    field = f.field
    c = verdict.c
    target = expand_difference(f, g)

    if g.m == 0:
        # degree-one corner: alpha*(X - gamma*Y)*(X + gamma*Y)
        gamma = verdict.delta
        alpha = f.coeffs[0]
        one = field.one()
        factors = [BiPoly.linear(one, -gamma, field), BiPoly.linear(one, gamma, field)]
        result = Factorization(_normalized(factors, field, unit=alpha), field, "K")
    elif verdict.delta is not None:
        d = verdict.delta
        A = even_part(xf_build(f))
        big = _compose_squares(divided_difference(A), c)
        one = field.one()
        factors = [BiPoly.linear(one, -d, field), BiPoly.linear(one, d, field), big]
        result = Factorization(_normalized(factors, field), field, "K")
    elif over_extension:
        ext = FieldSpec(field.p, 2 * field.k)
        c_ext = unipoly.embed(c, ext)
        d = sqrt(c_ext)
        A = even_part(xf_build(f))
        big = _compose_squares(
            BiPoly(
                {e: unipoly.embed(v, ext) for e, v in divided_difference(A).terms.items()},
                ext,
            ),
            c_ext,
        )
        one = ext.one()
        factors = [BiPoly.linear(one, -d, ext), BiPoly.linear(one, d, ext), big]
        target = BiPoly(
            {e: unipoly.embed(v, ext) for e, v in target.terms.items()}, ext
        )
        result = Factorization(_normalized(factors, ext), ext, "K(sqrt(c))")
    else:
        A = even_part(xf_build(f))
        big = _compose_squares(divided_difference(A), c)
        quad = BiPoly({(2, 0): field.one(), (0, 2): -c}, field)
        result = Factorization(
            _normalized([quad, big], field),
            field,
            "K",
            note="the quadratic factor splits into conjugate linear factors over K(sqrt(c))",
        )

    if result.product() != target:
        raise AssertionError("internal product-identity check failed")
    return result
