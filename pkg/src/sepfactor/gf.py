"""Exact arithmetic in GF(p) and GF(p^k) for odd characteristic p.

A field is described by a FieldSpec: the characteristic p, the extension
degree k, and (for k > 1) a monic irreducible modulus over GF(p).  Elements
are immutable vectors of k residues mod p, the coefficients of the
representative polynomial in the generator t, constant term first.

Element literals are polynomials in t with integer coefficients, e.g.
``t+2``, ``2*t^1+1``, ``2``.
"""

from __future__ import annotations


class FieldError(ValueError):
    """Bad field description, or an operation mixing distinct fields."""


class ParseError(ValueError):
    """Malformed polynomial or element literal."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Integer-coefficient polynomial helpers over GF(p), little-endian, trimmed.
# Used for modulus arithmetic before Elem/UniPoly exist (no import cycle).

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mul_mod_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _rem_mod_p(a, m, p):
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        if c:
            off = len(a) - len(m)
            for i in range(len(m)):
                a[off + i] = (a[off + i] - c * m[i]) % p
        a.pop()
        _trim(a)
    return a


def _gcd_mod_p(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _rem_mod_p(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _powmod_x(e, m, p):
    """X^e mod m over GF(p)."""
    result = [1]
    base = _rem_mod_p([0, 1], m, p)
    while e:
        if e & 1:
            result = _rem_mod_p(_mul_mod_p(result, base, p), m, p)
        base = _rem_mod_p(_mul_mod_p(base, base, p), m, p)
        e >>= 1
    return result


def _pow_poly_mod(a, e, m, p):
    result = [1]
    base = _rem_mod_p(a, m, p)
    while e:
        if e & 1:
            result = _rem_mod_p(_mul_mod_p(result, base, p), m, p)
        base = _rem_mod_p(_mul_mod_p(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible_mod_p(m, p):
    """Monic m of degree k >= 1 irreducible over GF(p)?

    m is irreducible iff it has no irreducible factor of degree <= k/2,
    tested by gcd(m, X^(p^d) - X) for d = 1 .. k/2.
    """
    k = len(m) - 1
    if k == 1:
        return True
    h = [0, 1]
    for _ in range(k // 2):
        h = _pow_poly_mod(h, p, m, p)
        g = list(h)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        _trim(g)
        if not g:
            return False
        if len(_gcd_mod_p(m, g, p)) > 1:
            return False
    return True


def irreducible_coeffs(p: int, k: int) -> tuple[int, ...]:
    """Coefficients of the canonical monic irreducible of degree k over GF(p).

    Monic polynomials are enumerated in ascending order of the base-p integer
    formed by their non-leading coefficients (constant term least
    significant); the first irreducible wins.  k = 1 yields X.
    """
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        coeffs = []
        v = n
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if _is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------


class FieldSpec:
    """Immutable description of GF(p^k) for an odd prime p.

    For k > 1 the modulus is a monic irreducible of degree k over GF(p),
    stored as a coefficient tuple (constant first).  The default modulus is
    the canonical one from irreducible_coeffs, so every run names elements
    identically.  k = 1 carries no modulus.
    """

    __slots__ = ("p", "k", "modulus", "q", "_tables")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if p == 2:
            raise FieldError(
                "characteristic 2 is rejected: this library assumes odd characteristic"
            )
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if k == 1:
            if modulus is not None:
                raise FieldError("GF(p) carries no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = irreducible_coeffs(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {k}")
            if not _is_irreducible_mod_p(list(modulus), p):
                raise FieldError("modulus is reducible over GF(p)")
            self.modulus = modulus
        self.p = p
        self.k = k
        self.q = p**k
        self._tables = None

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- element construction ------------------------------------------------

    def elem(self, value) -> Elem:
        """Element from an int (reduced mod p), a coefficient vector, or an Elem."""
        if isinstance(value, Elem):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return Elem(coeffs, self)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            raise FieldError(f"coefficient vector longer than k = {self.k}")
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return Elem(coeffs, self)

    def zero(self) -> Elem:
        return self.elem(0)

    def one(self) -> Elem:
        return self.elem(1)

    def gen(self) -> Elem:
        """The generator t (equals 0 when k = 1, where t is a root of X)."""
        if self.k == 1:
            return self.zero()
        return self.elem((0, 1))

    def from_index(self, n: int) -> Elem:
        """Element number n in [0, q): base-p digits, constant term first."""
        if not 0 <= n < self.q:
            raise FieldError(f"index {n} out of range for {self!r}")
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return Elem(tuple(coeffs), self)

    def elements(self):
        """All q elements in index order."""
        for n in range(self.q):
            yield self.from_index(n)


class Elem:
    """An element of GF(p^k): k residues mod p, constant term first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple[int, ...], field: FieldSpec):
        if len(coeffs) != field.k:
            raise FieldError(f"expected {field.k} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < field.p for c in coeffs):
            raise FieldError("coefficients must be residues in [0, p)")
        self.coeffs = coeffs
        self.field = field

    # -- helpers ---------------------------------------------------------

    def _check(self, other) -> Elem:
        if not isinstance(other, Elem):
            if isinstance(other, int):
                return self.field.elem(other)
            return NotImplemented
        if other.field != self.field:
            raise FieldError("elements of different fields")
        return other

    @property
    def index(self) -> int:
        """Base-p integer encoding (constant term least significant)."""
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.field.p + c
        return n

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return Elem(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return Elem(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __rsub__(self, other):
        return self.field.elem(other) - self

    def __neg__(self):
        p = self.field.p
        return Elem(tuple((-a) % p for a in self.coeffs), self.field)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.k == 1:
            return Elem(((self.coeffs[0] * other.coeffs[0]) % f.p,), f)
        prod = _mul_mod_p(list(self.coeffs), list(other.coeffs), f.p)
        prod = _rem_mod_p(prod, list(f.modulus), f.p)
        prod += [0] * (f.k - len(prod))
        return Elem(tuple(prod), f)

    __rmul__ = __mul__

    def inv(self) -> Elem:
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.field!r}")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.field.elem(other) / self

    def __pow__(self, e: int) -> Elem:
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> Elem:
        """x -> x^p, the Frobenius automorphism."""
        return self ** self.field.p

    # -- comparisons / formatting -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        return (
            isinstance(other, Elem)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field.p, self.field.k))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        parts = []
        for i in range(self.field.k - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"Elem({self}, {self.field!r})"


# ---------------------------------------------------------------------------
# Quadratic residues and square roots.


def is_square(c: Elem) -> bool:
    """Euler's criterion: nonzero c is a square iff c^((q-1)/2) = 1."""
    if c.is_zero():
        raise ValueError("is_square is undefined at zero; handle zero separately")
    return c ** ((c.field.q - 1) // 2) == c.field.one()


def sqrt(c: Elem) -> Elem:
    """A square root of a nonzero square, via Tonelli-Shanks over GF(q).

    Of the two roots r and -r, returns the one with the lexicographically
    smaller coefficient vector, so the output is canonical.
    """
    if c.is_zero():
        raise ValueError("sqrt of zero; handle zero separately")
    if not is_square(c):
        raise ValueError(f"{c} is not a square in {c.field!r}")
    field = c.field
    q = field.q
    m = q - 1
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    if s == 1:
        r = c ** ((q + 1) // 4)
    else:
        z = None
        for cand in field.elements():
            if not cand.is_zero() and not is_square(cand):
                z = cand
                break
        w = z**m
        r = c ** ((m + 1) // 2)
        t = c**m
        while t != field.one():
            t2 = t
            i = 0
            while t2 != field.one():
                t2 = t2 * t2
                i += 1
            b = w ** (1 << (s - i - 1))
            r = r * b
            w = b * b
            t = t * w
            s = i
    return min(r, -r, key=lambda x: x.coeffs)


def find_irreducible(p: int, k: int):
    """The canonical monic irreducible of degree k over GF(p), as a UniPoly.

    First in the enumeration of irreducible_coeffs; k = 1 gives X.
    """
    from . import unipoly

    base = FieldSpec(p, 1)
    coeffs = irreducible_coeffs(p, k)
    return unipoly.UniPoly([base.elem(c) for c in coeffs], base)


# ---------------------------------------------------------------------------
# Literal parsing: shared sum-of-products splitter for the t/x/y grammars.


def split_terms(text: str):
    """Split a sum into (sign, term) pairs at top-level + and -."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = []
    depth = 0
    start = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    cur = start
    for i in range(start, len(s)):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        elif ch in "+-" and depth == 0:
            if i == cur:
                raise ParseError(f"empty term in {text!r}")
            terms.append((sign, s[cur:i]))
            sign = -1 if ch == "-" else 1
            cur = i + 1
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    if cur == len(s):
        raise ParseError(f"trailing sign in {text!r}")
    terms.append((sign, s[cur:]))
    return terms


def split_atoms(term: str):
    """Split a product term at top-level * into atom strings."""
    atoms = []
    depth = 0
    cur = 0
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            if i == cur:
                raise ParseError(f"empty factor in {term!r}")
            atoms.append(term[cur:i])
            cur = i + 1
    if cur == len(term):
        raise ParseError(f"trailing * in {term!r}")
    atoms.append(term[cur:])
    return atoms


def _var_power(atom: str, var: str):
    """Return e for atom var^e or var, else None."""
    if atom == var:
        return 1
    if atom.startswith(var + "^"):
        try:
            e = int(atom[len(var) + 1 :])
        except ValueError:
            raise ParseError(f"bad exponent in {atom!r}") from None
        if e < 0:
            raise ParseError(f"negative exponent in {atom!r}")
        return e
    return None


def parse_elem(text: str, field: FieldSpec) -> Elem:
    """Parse an element literal: a polynomial in t with integer coefficients."""
    total = field.zero()
    for sign, term in split_terms(text):
        coeff = 1
        tpow = 0
        for atom in split_atoms(term):
            e = _var_power(atom, "t")
            if e is not None:
                tpow += e
                continue
            try:
                coeff *= int(atom)
            except ValueError:
                raise ParseError(f"bad atom {atom!r} in element literal {text!r}") from None
        if tpow > 0 and field.k == 1:
            raise ParseError(f"t does not exist in GF({field.p})")
        if tpow < field.k:
            vec = [0] * field.k
            vec[tpow] = 1
        else:
            # reduce t^e mod the modulus
            vec = _rem_mod_p([0] * tpow + [1], list(field.modulus), field.p)
            vec += [0] * (field.k - len(vec))
        part = Elem(tuple(vec), field)
        total = total + part * field.elem(sign * coeff)
    return total
