"""Seeded Cantor-Zassenhaus factorization on packed coefficient vectors.

Internal backend for unipoly.factor.  A polynomial is a vector of element
indices (the base-p encoding of each coefficient, constant term first).
Prime fields run on numpy residue arrays with a matrix-form Frobenius for
the distinct-degree stage; extension fields use precomputed multiplication
and addition tables.  Both paths are exact.

The table path is capped at field size TABLE_CAP; this is a desk-scale
library, not a cryptographic one.
"""

from __future__ import annotations

import random

import numpy as np

from .gf import FieldSpec

TABLE_CAP = 1024


class EngineError(ValueError):
    """Field too large for the packed factoring engine."""


# ---------------------------------------------------------------------------


class _OpsBase:
    """Algorithm-level operations shared by both coefficient backends."""

    p: int
    k: int
    q: int

    def div(self, a, b):
        return self.divmod_(a, b)[0]

    def mod(self, a, b):
        return self.divmod_(a, b)[1]

    def gcd(self, a, b):
        while self.deg(b) >= 0:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def mulmod(self, a, b, m):
        return self.mod(self.mul(a, b), m)

    def powmod(self, a, e, m):
        result = self.one()
        base = self.mod(a, m)
        while e:
            if e & 1:
                result = self.mulmod(result, base, m)
            base = self.mulmod(base, base, m)
            e >>= 1
        return result

    def frob_matrix(self, m):
        """Rows X^(q*j) mod m for j < deg m; the q-power map is linear."""
        n = self.deg(m)
        xq = self.powmod(self.x(), self.q, m)
        rows = [self.pad(self.one(), n)]
        cur = self.one()
        for _ in range(1, n):
            cur = self.mulmod(cur, xq, m)
            rows.append(self.pad(cur, n))
        return self.pack_rows(rows)


def _np_trim(a):
    """Drop trailing zeros; scalar back-scan beats np.trim_zeros by ~100x here."""
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


class _PrimeOps(_OpsBase):
    """GF(p) coefficients as numpy int64 residue arrays (index == value)."""

    def __init__(self, field: FieldSpec):
        self.p = field.p
        self.k = 1
        self.q = field.p
        self._zero = np.zeros(0, dtype=np.int64)

    def poly(self, idx):
        return _np_trim(np.asarray(idx, dtype=np.int64) % self.p)

    def coeffs(self, a):
        return [int(v) for v in a]

    def deg(self, a):
        return len(a) - 1

    def zero(self):
        return self._zero

    def one(self):
        return np.ones(1, dtype=np.int64)

    def x(self):
        return np.array([0, 1], dtype=np.int64)

    def pad(self, a, n):
        out = np.zeros(n, dtype=np.int64)
        out[: len(a)] = a
        return out

    def pack_rows(self, rows):
        return np.vstack(rows)

    def add(self, a, b):
        n = max(len(a), len(b))
        return _np_trim((self.pad(a, n) + self.pad(b, n)) % self.p)

    def sub(self, a, b):
        n = max(len(a), len(b))
        return _np_trim((self.pad(a, n) - self.pad(b, n)) % self.p)

    def mul(self, a, b):
        if len(a) == 0 or len(b) == 0:
            return self._zero
        return np.convolve(a, b) % self.p

    def divmod_(self, a, b):
        if len(b) == 0:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return self._zero, a
        r = a.copy()
        nb = len(b)
        binv = pow(int(b[-1]), self.p - 2, self.p)
        quo = np.zeros(len(a) - nb + 1, dtype=np.int64)
        for k in range(len(a) - nb, -1, -1):
            c = r[k + nb - 1] * binv % self.p
            if c:
                quo[k] = c
                r[k : k + nb] = (r[k : k + nb] - c * b) % self.p
        return _np_trim(quo), _np_trim(r[: nb - 1])

    def monic(self, a):
        if len(a) == 0 or a[-1] == 1:
            return a
        inv = pow(int(a[-1]), self.p - 2, self.p)
        return a * inv % self.p

    def scale_int(self, a, c):
        return _np_trim(a * (c % self.p) % self.p)

    def derivative(self, a):
        if len(a) <= 1:
            return self._zero
        return _np_trim(a[1:] * np.arange(1, len(a), dtype=np.int64) % self.p)

    def pth_root(self, a):
        # coefficients of GF(p) are Frobenius-fixed
        return _np_trim(a[:: self.p].copy())

    def frob_apply(self, h, rows):
        n = rows.shape[0]
        return _np_trim(self.pad(h, n) @ rows % self.p)

    def frob_matrix(self, m):
        """Rows X^(p*j) mod m built by shift-by-p and reduce; m monic."""
        n = len(m) - 1
        p = self.p
        red = np.empty((p, n), dtype=np.int64)  # X^(n+i) mod m
        red[0] = (-m[:n]) % p
        for i in range(1, p):
            row = np.zeros(n, dtype=np.int64)
            row[1:] = red[i - 1][:-1]
            red[i] = (row + red[i - 1][-1] * red[0]) % p
        rows = np.zeros((n, n), dtype=np.int64)
        rows[0, 0] = 1
        split = max(0, n - p)
        for j in range(1, n):
            prev = rows[j - 1]
            acc = np.zeros(n, dtype=np.int64)
            if split:
                acc[p:] = prev[:split]
            over = np.zeros(p, dtype=np.int64)
            over[max(p - n, 0) :] = prev[split:]
            rows[j] = (acc + over @ red) % p
        return rows

    def rand_poly(self, rng, n):
        return _np_trim(
            np.array([rng.randrange(self.p) for _ in range(n)], dtype=np.int64)
        )


class _TableOps(_OpsBase):
    """GF(p^k) coefficients as element indices with full lookup tables."""

    def __init__(self, field: FieldSpec):
        self.p = field.p
        self.k = field.k
        self.q = field.q
        if self.q > TABLE_CAP:
            raise EngineError(
                f"field of size {self.q} exceeds the factoring engine cap {TABLE_CAP}"
            )
        p, k, q = self.p, self.k, self.q
        digits = np.zeros((q, k), dtype=np.int64)
        n = np.arange(q)
        for i in range(k):
            digits[:, i] = (n // p**i) % p
        powers = p ** np.arange(k)

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        self.ADD = add.tolist()
        self.NEG = (((p - digits) % p) @ powers).tolist()

        # full products, then reduce X^(k+i) by the modulus rows
        conv = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        if k > 1:
            red = np.zeros((k - 1, k), dtype=np.int64)  # X^(k+i) mod modulus
            mod_vec = np.array(field.modulus[:-1], dtype=np.int64)
            cur = (-mod_vec) % p
            red[0] = cur
            for i in range(1, k - 1):
                nxt = np.zeros(k, dtype=np.int64)
                nxt[1:] = cur[:-1]
                nxt = (nxt + cur[-1] * red[0]) % p
                red[i] = nxt
                cur = nxt
            low = conv[:, :, :k]
            for i in range(k - 1):
                low = low + conv[:, :, k + i, None] * red[i][None, None, :]
            mul = (low % p) @ powers
        else:
            mul = conv[:, :, 0] % p
        self.MUL = mul.tolist()

        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._pow_idx(a, q - 2)
        self.INV = inv
        self.PROOT = [self._pow_idx(a, p ** (k - 1)) for a in range(q)]

    def _pow_idx(self, a, e):
        mul = self.MUL
        result = 1
        while e:
            if e & 1:
                result = mul[result][a]
            a = mul[a][a]
            e >>= 1
        return result

    def poly(self, idx):
        a = [int(v) for v in idx]
        while a and a[-1] == 0:
            a.pop()
        return a

    def coeffs(self, a):
        return list(a)

    def deg(self, a):
        return len(a) - 1

    def zero(self):
        return []

    def one(self):
        return [1]

    def x(self):
        return [0, 1]

    def pad(self, a, n):
        return list(a) + [0] * (n - len(a))

    def pack_rows(self, rows):
        return rows

    @staticmethod
    def _trim(a):
        while a and a[-1] == 0:
            a.pop()
        return a

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        ADD = self.ADD
        out = list(a)
        for i, y in enumerate(b):
            out[i] = ADD[out[i]][y]
        return self._trim(out)

    def sub(self, a, b):
        return self.add(a, [self.NEG[y] for y in b])

    def mul(self, a, b):
        if not a or not b:
            return []
        ADD, MUL = self.ADD, self.MUL
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = MUL[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ADD[out[i + j]][row[y]]
        return self._trim(out)

    def divmod_(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return [], list(a)
        ADD, MUL, NEG = self.ADD, self.MUL, self.NEG
        r = list(a)
        nb = len(b)
        binv = self.INV[b[-1]]
        quo = [0] * (len(a) - nb + 1)
        for k in range(len(a) - nb, -1, -1):
            c = MUL[r[k + nb - 1]][binv]
            if c:
                quo[k] = c
                row = MUL[c]
                for i in range(nb):
                    y = b[i]
                    if y:
                        r[k + i] = ADD[r[k + i]][NEG[row[y]]]
        return self._trim(quo), self._trim(r[: nb - 1])

    def monic(self, a):
        if not a or a[-1] == 1:
            return a
        row = self.MUL[self.INV[a[-1]]]
        return [row[c] for c in a]

    def derivative(self, a):
        if len(a) <= 1:
            return []
        MUL = self.MUL
        return self._trim([MUL[i % self.p][a[i]] for i in range(1, len(a))])

    def pth_root(self, a):
        PROOT = self.PROOT
        return self._trim([PROOT[c] for c in a[:: self.p]])

    def frob_apply(self, h, rows):
        n = len(rows)
        ADD, MUL = self.ADD, self.MUL
        acc = [0] * n
        for j, c in enumerate(h):
            if c:
                row = rows[j]
                mc = MUL[c]
                for idx in range(n):
                    r = row[idx]
                    if r:
                        acc[idx] = ADD[acc[idx]][mc[r]]
        return self._trim(acc)

    def rand_poly(self, rng, n):
        return self._trim([rng.randrange(self.q) for _ in range(n)])


_ENGINES: dict = {}


def engine(field: FieldSpec):
    key = (field.p, field.k, field.modulus)
    ops = _ENGINES.get(key)
    if ops is None:
        ops = _PrimeOps(field) if field.k == 1 else _TableOps(field)
        _ENGINES[key] = ops
    return ops


# ---------------------------------------------------------------------------
# Squarefree decomposition, distinct-degree, equal-degree.


def _squarefree(ops, f):
    """Monic f -> [(monic squarefree part, multiplicity)]."""
    out = []

    def rec(f, mult):
        d = ops.derivative(f)
        if ops.deg(d) < 0:
            # all exponents divisible by p: take the p-th root
            rec(ops.pth_root(f), mult * ops.p)
            return
        c = ops.gcd(f, d)
        w = ops.div(f, c)
        i = 1
        while ops.deg(w) > 0:
            y = ops.gcd(w, c)
            z = ops.div(w, y)
            if ops.deg(z) > 0:
                out.append((z, mult * i))
            c = ops.div(c, y)
            w = y
            i += 1
        if ops.deg(c) > 0:
            rec(c, mult)

    rec(f, 1)
    return out


def _distinct_degree(ops, f):
    """Monic squarefree f -> [(product of degree-d irreducibles, d)]."""
    n = ops.deg(f)
    if n == 1:
        return [(f, 1)]
    out = []
    rows = ops.frob_matrix(f)
    h = ops.x()
    x = ops.x()
    v = f
    d = 0
    while ops.deg(v) >= 2 * (d + 1):
        d += 1
        h = ops.frob_apply(h, rows)
        g = ops.gcd(ops.mod(ops.sub(h, x), v), v)
        if ops.deg(g) > 0:
            out.append((g, d))
            v = ops.div(v, g)
    if ops.deg(v) > 0:
        out.append((v, ops.deg(v)))
    return out


def _equal_degree(ops, f, d, rng):
    """Split monic squarefree f whose irreducible factors all have degree d."""
    n = ops.deg(f)
    if n == d:
        return [f]
    exp = (ops.q**d - 1) // 2
    while True:
        a = ops.rand_poly(rng, n)
        if ops.deg(a) < 1:
            continue
        g = ops.gcd(a, f)
        if not 0 < ops.deg(g) < n:
            b = ops.powmod(a, exp, f)
            g = ops.gcd(ops.sub(b, ops.one()), f)
            if not 0 < ops.deg(g) < n:
                continue
        return _equal_degree(ops, g, d, rng) + _equal_degree(ops, ops.div(f, g), d, rng)


def factor_indices(field: FieldSpec, coeffs, seed: int = 0):
    """Factor the packed polynomial; [(coefficient index tuple, multiplicity)].

    Output is the monic factorization, sorted by (degree, coefficient tuple).
    """
    ops = engine(field)
    f = ops.poly(coeffs)
    if ops.deg(f) < 1:
        raise ValueError("cannot factor a constant polynomial")
    f = ops.monic(f)
    rng = random.Random(seed)
    result = []
    for g, mult in _squarefree(ops, f):
        for h, d in _distinct_degree(ops, g):
            for irr in _equal_degree(ops, h, d, rng):
                result.append((tuple(ops.coeffs(irr)), mult))
    result.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return result
