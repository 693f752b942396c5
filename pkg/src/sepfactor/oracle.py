"""Independent brute-force verification of bivariate factorizations.

kronecker_factor reduces bivariate factorization over GF(q) to univariate
factorization through the substitution X -> T^e, Y -> T with e = deg_Y + 1:
the Y-exponent is the base-e digit of the image exponent, so any candidate
factor is recovered from a sub-multiset of the univariate factors by digit
expansion and validated by exact division in the bivariate ring.  The
search enumerates sub-multisets in increasing size, so every factor found
is irreducible; sizes beyond half the pool prove irreducibility.

Candidates are prefiltered through the necessary condition
H(0,Y) | P(0,Y), which prunes almost everything without ever rejecting a
true factor.  decompose_all exhausts functional decompositions G(H(X)) = F
at desk scale.  Everything is exact; guardrails refuse inputs that would
make the subset search explode.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import czfactor, unipoly
from .additive import AdditivePoly
from .gf import FieldSpec
from .sepfact import BiPoly, Factorization, Verdict, decide, expand_difference, factor_separated
from .unipoly import UniPoly

MAX_TOTAL_DEGREE = 30
MAX_FIELD_SIZE = 81
MAX_SEARCH_NODES = 2_000_000
MAX_DECOMPOSE_DEGREE = 12
MAX_DIVISOR_SET = 4096


class GuardrailError(ValueError):
    """Input exceeds the oracle's desk-scale guardrails."""


@dataclass(frozen=True)
class OracleReport:
    """Complete irreducible factorization found by the oracle.

    unit * product(factors^mult) equals input exactly; verified before the
    report is constructed.
    """

    input: BiPoly
    factors: tuple
    unit: object
    elapsed: float
    method: str

    def total_factor_count(self) -> int:
        return sum(m for _, m in self.factors)


# ---------------------------------------------------------------------------
# Sub-multiset recombination.


def _truncate(ops, a, e):
    if ops.deg(a) < e:
        return a
    return ops.poly(ops.coeffs(a)[:e])


def _low_divisor_keys(P: BiPoly, ops, seed: int):
    """Coefficient keys of all monic divisors of P(0, Y), or None when the
    divisor lattice is too large to cache (the filter is then skipped)."""
    terms = {j: c for (i, j), c in P.terms.items() if i == 0}
    coeffs = [0] * (max(terms) + 1 if terms else 1)
    for j, c in terms.items():
        coeffs[j] = c.index
    low = ops.poly(coeffs)
    if ops.deg(low) < 1:
        return {(1,)}
    pairs = czfactor.factor_indices(P.field, ops.coeffs(low), seed)
    count = 1
    for _, m in pairs:
        count *= m + 1
        if count > MAX_DIVISOR_SET:
            return None
    divisors = [ops.one()]
    for fac, m in pairs:
        fac = ops.poly(list(fac))
        powers = [ops.one()]
        for _ in range(m):
            powers.append(ops.mul(powers[-1], fac))
        divisors = [ops.mul(d, pw) for d in divisors for pw in powers]
    return {tuple(ops.coeffs(d)) for d in divisors}


class _NodeBudget:
    """Mutable counter bounding one kronecker call's sub-multiset search."""

    __slots__ = ("left",)

    def __init__(self, left):
        self.left = left

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise GuardrailError(
                f"sub-multiset recombination exceeded {MAX_SEARCH_NODES} search nodes"
            )


def _submultisets(pool_lows, counts, size, ops, e, budget):
    """Yield (counts dict, product mod T^e) over sub-multisets of given size."""
    n = len(pool_lows)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]
    chosen: dict = {}

    def rec(idx, remaining, partial):
        if remaining == 0:
            yield dict(chosen), partial
            return
        if idx == n or suffix[idx] < remaining:
            return
        budget.spend()
        yield from rec(idx + 1, remaining, partial)
        cur = partial
        top = min(counts[idx], remaining)
        for c in range(1, top + 1):
            cur = _truncate(ops, ops.mul(cur, pool_lows[idx]), e)
            chosen[idx] = c
            yield from rec(idx + 1, remaining - c, cur)
        del chosen[idx]

    yield from rec(0, size, ops.one())


def _find_factor(P: BiPoly, pool, packed, e: int, ops, lowdivs, budget):
    """Smallest sub-multiset whose decoded product divides P, or None."""
    total = sum(m for _, m in pool)
    lows = [_truncate(ops, pk, e) for pk in packed]
    counts = [m for _, m in pool]
    for size in range(1, total // 2 + 1):
        for chosen, low in _submultisets(lows, counts, size, ops, e, budget):
            if lowdivs is not None and ops.deg(low) >= 1:
                if tuple(ops.coeffs(ops.monic(low))) not in lowdivs:
                    continue
            h = ops.one()
            for idx, c in chosen.items():
                for _ in range(c):
                    h = ops.mul(h, packed[idx])
            hpoly = UniPoly([P.field.from_index(i) for i in ops.coeffs(h)], P.field)
            H = BiPoly.from_kronecker(hpoly, e)
            if H.is_constant():
                continue
            if P.divide_exact(H) is not None:
                return H, chosen
    return None


def _recombine(P: BiPoly, upairs, e: int, seed: int):
    """Complete factorization of a monomial-free P from its image factors."""
    field = P.field
    ops = czfactor.engine(field)
    pool = [[fac, mult] for fac, mult in upairs]
    packed = [ops.poly([c.index for c in fac.coeffs]) for fac, _ in pool]
    found = []
    budget = _NodeBudget(MAX_SEARCH_NODES)
    # divisors of P(0, Y) over-approximate those of every quotient of P, so
    # one filter set serves the whole extraction loop
    lowdivs = _low_divisor_keys(P, ops, seed)
    while not P.is_constant():
        hit = _find_factor(P, pool, packed, e, ops, lowdivs, budget)
        if hit is None:
            _, mono = P.monic_normalize()
            found.append((mono, 1))
            break
        H, chosen = hit
        _, mono = H.monic_normalize()
        mult = 0
        while True:
            quo = P.divide_exact(mono)
            if quo is None:
                break
            P = quo
            mult += 1
            for idx, c in chosen.items():
                pool[idx][1] -= c
        if mult == 0 or any(m < 0 for _, m in pool):
            raise AssertionError("oracle recombination lost image consistency")
        found.append((mono, mult))
        keep = [i for i in range(len(pool)) if pool[i][1] > 0]
        pool = [pool[i] for i in keep]
        packed = [packed[i] for i in keep]
    return found


def kronecker_factor(P: BiPoly, seed: int = 0) -> OracleReport:
    """Complete irreducible factorization of P over its base field.

    Desk-scale only: refuses total degree > 30, field size > 81, or an
    image whose sub-multiset search would exceed the subset budget.
    """
    start = time.perf_counter()
    if P.is_zero() or P.is_constant():
        raise ValueError("oracle input must have total degree >= 1")
    if P.total_degree() > MAX_TOTAL_DEGREE:
        raise GuardrailError(f"total degree {P.total_degree()} exceeds {MAX_TOTAL_DEGREE}")
    if P.field.q > MAX_FIELD_SIZE:
        raise GuardrailError(f"field size {P.field.q} exceeds {MAX_FIELD_SIZE}")

    field = P.field
    work = P
    swapped = False
    if work.deg_x() < work.deg_y():
        work = work.swap_vars()
        swapped = True

    # strip monomial content; recombination assumes a primitive input
    shift_x = min(i for i, _ in work.terms)
    shift_y = min(j for _, j in work.terms)
    factors = []
    if shift_x or shift_y:
        work = BiPoly(
            {(i - shift_x, j - shift_y): c for (i, j), c in work.terms.items()}, field
        )
        if shift_x:
            factors.append((BiPoly({(1, 0): field.one()}, field), shift_x))
        if shift_y:
            factors.append((BiPoly({(0, 1): field.one()}, field), shift_y))

    if not work.is_constant():
        e = work.deg_y() + 1
        image = work.kronecker_image(e)
        upairs = unipoly.factor(image, seed)
        factors.extend(_recombine(work, upairs, e, seed))

    if swapped:
        factors = [(h.swap_vars(), m) for h, m in factors]
    factors.sort(key=lambda fm: fm[0].sort_key())

    product = BiPoly.constant(field.one())
    for h, m in factors:
        product = product * h**m
    unit = P.leading_term()[1] / product.leading_term()[1]
    if product.scale(unit) != P:
        raise AssertionError("oracle factorization failed its product check")
    return OracleReport(
        input=P,
        factors=tuple(factors),
        unit=unit,
        elapsed=time.perf_counter() - start,
        method="kronecker-swapped" if swapped else "kronecker",
    )


def is_irreducible_bivariate(P: BiPoly, seed: int = 0) -> bool:
    """True iff the oracle finds a single factor of multiplicity one."""
    report = kronecker_factor(P, seed)
    return len(report.factors) == 1 and report.factors[0][1] == 1


# ---------------------------------------------------------------------------
# Functional decomposition search.


def _divisors(n: int):
    return [d for d in range(2, n) if n % d == 0]


def _base_h_expansion(F: UniPoly, H: UniPoly):
    """G with G(H) = F when F is H-composable, else None."""
    digits = []
    rem = F
    while not rem.is_zero():
        rem, digit = divmod(rem, H)
        if not digit.is_constant():
            return None
        digits.append(digit[0])
    G = UniPoly(digits, F.field)
    if G.compose(H) != F:
        return None
    return G


def decompose_all(F: UniPoly):
    """All nontrivial functional decompositions G(H(X)) = F(X).

    H is normalized monic with zero constant term (the degree-one ambiguity
    on either side is quotiented out); 1 < deg H < deg F.  For cofactor
    degree prime to p the candidate H is unique and found by triangular
    coefficient matching; otherwise all monic H are enumerated.  Every
    candidate is verified by base-H expansion before being reported.
    """
    if F.is_constant() or F.degree < 2:
        raise ValueError("decomposition needs deg F >= 2")
    if F.degree > MAX_DECOMPOSE_DEGREE:
        raise GuardrailError(f"deg F = {F.degree} exceeds {MAX_DECOMPOSE_DEGREE}")
    field = F.field
    p = field.p
    n = F.degree
    lead_inv = F.leading().inv()
    Fm = F.scale(lead_inv)
    out = []
    for d in _divisors(n):
        s = n // d
        cands = []
        if s % p != 0:
            H = UniPoly.monomial(field.one(), d)
            s_inv = field.elem(s).inv()
            for i in range(1, d):
                Hs = H**s
                h = (Fm[n - i] - Hs[n - i]) * s_inv
                if not h.is_zero():
                    H = H + UniPoly.monomial(h, d - i)
            cands.append(H)
        else:
            if field.q ** (d - 1) > 1 << 16:
                raise GuardrailError(
                    f"enumerating degree-{d} right components over {field!r} is too large"
                )
            for mid in itertools.product(range(field.q), repeat=d - 1):
                coeffs = [field.zero()]
                coeffs += [field.from_index(i) for i in mid]
                coeffs.append(field.one())
                cands.append(UniPoly(coeffs, field))
        for H in cands:
            G = _base_h_expansion(F, H)
            if G is not None:
                out.append((G, H))
    out.sort(key=lambda gh: (gh[1].degree, gh[1].sort_key()))
    return out


# ---------------------------------------------------------------------------
# End-to-end theorem verification.


@dataclass(frozen=True)
class PairCheck:
    """Outcome of one decide/factor/oracle cross-check."""

    ok: bool
    verdict: Verdict
    report: OracleReport
    factorization: Factorization | None
    detail: str | None = None


def verify_theorem_pair(f: AdditivePoly, g: AdditivePoly, seed: int = 0) -> PairCheck:
    """Cross-check decide and factor_separated against the oracle.

    PASS iff the reducibility verdicts agree and, for a reducible pair, the
    factor multisets coincide after monic normalization (units included).
    """
    verdict = decide(f, g)
    P = expand_difference(f, g)
    report = kronecker_factor(P, seed)
    oracle_reducible = report.total_factor_count() >= 2
    if verdict.reducible != oracle_reducible:
        return PairCheck(
            False,
            verdict,
            report,
            None,
            detail=f"decide says {'reducible' if verdict.reducible else 'irreducible'}, "
            f"oracle found {report.total_factor_count()} factors",
        )
    if not verdict.reducible:
        return PairCheck(True, verdict, report, None)

    fact = factor_separated(f, g)
    mine: dict = {}
    unit = f.field.one()
    for h, m in fact.factors:
        u, mono = h.monic_normalize()
        unit = unit * u**m
        mine[mono] = mine.get(mono, 0) + m
    theirs: dict = {}
    for h, m in report.factors:
        theirs[h] = theirs.get(h, 0) + m
    if mine != theirs or unit != report.unit:
        return PairCheck(
            False,
            verdict,
            report,
            fact,
            detail="factor multisets disagree: "
            f"constructed {[(str(h), m) for h, m in sorted(mine.items(), key=lambda km: km[0].sort_key())]} "
            f"vs oracle {[(str(h), m) for h, m in sorted(theirs.items(), key=lambda km: km[0].sort_key())]}",
        )
    return PairCheck(True, verdict, report, fact)
