"""Exact arithmetic in F_{p^k}, polynomials over F_q, and cyclotomic integers.

Field elements are encoded as integers ``0 <= code < q``: the element
``c_0 + c_1 a + ... + c_{k-1} a^{k-1}`` (``a`` a root of the modulus) has code
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  Elements of the prime subfield keep
their residue as code.  All arithmetic goes through precomputed tables, so the
hot loops elsewhere in the package operate on plain ints.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``; raise ValueError otherwise."""
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


# -- polynomials over F_p with plain int coefficients (bootstrap only) ------

def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _strip(a[:dm])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


class Field:
    """The finite field F_q, q = p^k, with an explicit modulus over F_p.

    Instances are interned by :func:`field_make`; compare them by ``key``.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1 or len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        q = self.q
        vecs = [self._vec(c) for c in range(q)]
        self.add_t = [[self._code([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                       for b in range(q)] for a in range(q)]
        self.neg_t = [self._code([(-x) % p for x in vecs[a]]) for a in range(q)]
        self.sub_t = [[self.add_t[a][self.neg_t[b]] for b in range(q)] for a in range(q)]
        if k == 1:
            self.mul_t = [[a * b % p for b in range(q)] for a in range(q)]
        else:
            self.mul_t = [[self._code(_pmod(_pmul(vecs[a], vecs[b], p), modulus, p))
                           for b in range(q)] for a in range(q)]
        self.inv_t = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_t[a][b] == 1:
                    self.inv_t[a] = b
                    break
            else:
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.frob_t = [self.pow(a, p) for a in range(q)]
        self.trace_t = []
        for a in range(q):
            s, x = 0, a
            for _ in range(k):
                s = self.add_t[s][x]
                x = self.frob_t[x]
            if s >= p:
                raise AssertionError("absolute trace left the prime field")
            self.trace_t.append(s)

    def _vec(self, code):
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _code(self, vec):
        c = 0
        for x in reversed(list(vec) + [0] * (self.k - len(vec))):
            c = c * self.p + x
        return c

    @property
    def key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Field({self.serialize()!r})"

    def __len__(self):
        return self.q

    def serialize(self) -> str:
        return f"{self.p}^{self.k}/" + ",".join(map(str, self.modulus))

    @classmethod
    def parse(cls, text: str) -> "Field":
        head, _, mod = text.partition("/")
        p, k = (int(t) for t in head.split("^"))
        f = field_make(p, k)
        if mod and tuple(int(t) for t in mod.split(",")) != f.modulus:
            return Field(p, k, tuple(int(t) for t in mod.split(",")))
        return f

    # -- code-level arithmetic ------------------------------------------
    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.sub_t[a][b]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        r = self.inv_t[a]
        if r is None:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return r

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul_t[r][a]
            a = self.mul_t[a][a]
            e >>= 1
        return r

    def coeffs(self, code) -> tuple[int, ...]:
        return tuple(self._vec(code))

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- element-level API ----------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        vec = [int(c) % self.p for c in value]
        if len(vec) > self.k:
            vec = _pmod(vec, self.modulus, self.p)
        return FieldElement(self, self._code(vec))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for F_{self.q}")
        return FieldElement(self, code)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def generator(self):
        """Class of x modulo the modulus (the prime-field element 0 when k = 1)."""
        return FieldElement(self, self.p if self.k > 1 else 0)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_t[self.code][b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_t[self.code][b])

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_t[b][self.code])

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_t[self.code])

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_t[self.code][b])

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_t[self.code][self.field.inv(b)])

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def frobenius(self):
        return FieldElement(self.field, self.field.frob_t[self.code])

    def trace(self) -> int:
        """Absolute trace to F_p, as a residue in ``range(p)``."""
        return self.field.trace_t[self.code]

    @property
    def coeffs(self):
        return self.field.coeffs(self.code)

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.field.k == 1:
            return str(self.code)
        return "[" + ",".join(map(str, self.coeffs)) + "]"


# -- polynomials over an arbitrary finite field ------------------------------

class Poly:
    """Univariate polynomial over a :class:`Field`, coefficients low degree first.

    Coefficients are field codes; trailing zeros are stripped so the zero
    polynomial has ``coeffs == ()`` and ``degree == -1``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        c = [x.code if isinstance(x, FieldElement) else x for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, code):
        return cls(field, (code,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add_t[out[i]][y]
        return Poly(F, out)

    def __neg__(self):
        return Poly(self.field, [self.field.neg_t[c] for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            other = Poly.constant(F, F.from_int(other))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add_t, F.mul_t
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    out[i + j] = add[out[i + j]][row[y]]
        return Poly(F, out)

    def scale(self, code):
        return Poly(self.field, [self.field.mul_t[code][c] for c in self.coeffs])

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        db = other.degree
        if len(a) - 1 < db:
            return Poly(F), self
        inv = F.inv(other.lc)
        quo = [0] * (len(a) - db)
        b = other.coeffs
        for i in range(len(a) - 1, db - 1, -1):
            c = F.mul_t[a[i]][inv]
            if c:
                quo[i - db] = c
                for j in range(db + 1):
                    a[i - db + j] = F.sub_t[a[i - db + j]][F.mul_t[c][b[j]]]
        return Poly(F, quo), Poly(F, a[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul_t[F.from_int(i)][c] for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, code):
        """Evaluate at a field element code (Horner)."""
        F = self.field
        r = 0
        for c in reversed(self.coeffs):
            r = F.add_t[F.mul_t[r][code]][c]
        return r

    def powmod(self, e: int, mod: "Poly"):
        result = Poly.constant(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(self.field.element(c))
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mon:
                terms.append(cs)
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.p
    root = lambda c: F.pow(c, F.q // p)  # inverse Frobenius on F_q
    return Poly(F, [root(c) for c in f.coeffs[::p]])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Write monic ``f`` as a product of powers of squarefree, coprime factors."""
    out = []
    c = poly_gcd(f, f.derivative()) if not f.derivative().is_zero() else f
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if not c.is_one():
        for g, m in squarefree_decomposition(_pth_root(c)):
            out.append((g, m * f.field.p))
    return out


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    F = f.field
    x = Poly.x(F)
    out = []
    h = x % f if f.degree > 1 else x
    i = 1
    while f.degree >= 2 * i:
        h = h.powmod(F.q, f)
        g = poly_gcd(f, h - x)
        if not g.is_one():
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _candidate_polys(F: Field, maxdeg: int):
    for deg in range(1, maxdeg + 1):
        for lead in range(1, F.q):
            for tail in itertools.product(range(F.q), repeat=deg):
                yield Poly(F, list(tail) + [lead])


def equal_degree_factorization(f: Poly, d: int) -> list[Poly]:
    """Split a product of distinct degree-``d`` irreducibles (Cantor-Zassenhaus)."""
    if f.degree == d:
        return [f]
    F = f.field
    for a in _candidate_polys(F, f.degree - 1):
        if F.p == 2:
            b = Poly(F)
            t = a % f
            for _ in range(F.k * d):
                b = b + t
                t = (t * t) % f
        else:
            b = a.powmod((F.q**d - 1) // 2, f) - Poly.constant(F, 1)
        g = poly_gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree_factorization(g, d) + equal_degree_factorization(f.exact_div(g), d)
    raise AssertionError("equal-degree splitting exhausted its candidates")


def _roots(f: Poly):
    return [a for a in range(f.field.q) if f(a) == 0]


def poly_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial into ``(irreducible, multiplicity)`` pairs.

    The result is sorted by degree, then lexicographically from the leading
    coefficient down.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.lc != 1:
        raise ValueError("poly_factor expects a monic polynomial")
    F = f.field
    if f.degree <= 0:
        return []
    if f.degree <= 2:
        out = {}
        rest = f
        for r in _roots(f):
            lin = Poly(F, (F.neg_t[r], 1))
            while rest.degree > 0:
                qu, rem = divmod(rest, lin)
                if not rem.is_zero():
                    break
                out[lin] = out.get(lin, 0) + 1
                rest = qu
        if rest.degree > 0:
            out[rest] = out.get(rest, 0) + 1
        return sorted(out.items(), key=lambda t: t[0].sort_key())
    out = {}
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, d):
                irr = irr.monic()
                out[irr] = out.get(irr, 0) + m
    return sorted(out.items(), key=lambda t: t[0].sort_key())


def is_irreducible(f: Poly) -> bool:
    """Rabin-style test: x^{q^d} = x mod f and no proper-degree common roots."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    x = Poly.x(F)
    d = f.degree
    primes = [r for r in range(2, d + 1) if d % r == 0 and is_prime(r)]
    for r in primes:
        h = x.powmod(F.q ** (d // r), f) - x
        if not poly_gcd(f, h).is_one():
            return False
    return (x.powmod(F.q**d, f) - x).is_zero()


def irreducible_polys(field: Field, d: int):
    """All monic irreducibles of degree ``d`` over ``field`` in canonical order."""
    out = []
    for tail in itertools.product(range(field.q), repeat=d):
        f = Poly(field, list(tail) + [1])
        if is_irreducible(f):
            out.append(f)
    return sorted(out, key=Poly.sort_key)


def lowest_irreducible(field: Field, d: int) -> Poly:
    """Lowest monic irreducible of degree ``d``: compare coefficients from x^{d-1} down."""
    for tail in itertools.product(range(field.q), repeat=d):
        f = Poly(field, list(reversed(tail)) + [1])
        if is_irreducible(f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {d} over F_{field.q}")


@functools.cache
def field_make(p: int, k: int = 1) -> Field:
    """Build F_{p^k} with the lowest monic irreducible modulus over F_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if k == 1:
        return Field(p, 1, (0, 1))
    prime = field_make(p, 1)
    f = lowest_irreducible(prime, k)
    return Field(p, k, f.coeffs)


def gf(q: int) -> Field:
    p, k = prime_power(q)
    return field_make(p, k)


# -- Z[zeta_p] ----------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[zeta] for zeta a primitive p-th root of unity.

    Stored in the basis ``1, zeta, ..., zeta^{p-2}`` (reduced modulo the p-th
    cyclotomic polynomial), so equality is coefficientwise.
    """

    p: int
    coeffs: tuple

    @classmethod
    def from_int(cls, p, n):
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p, e):
        return cls._reduce(p, [1 if i == e % p else 0 for i in range(p)])

    @staticmethod
    def _reduce(p, vec):
        """Reduce a length-p vector over 1..zeta^{p-1} using zeta^{p-1} = -(1+...+zeta^{p-2})."""
        top = vec[p - 1]
        return CyclotomicInt(p, tuple(v - top for v in vec[: p - 1]))

    def _lift(self, other):
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.p, other)
        if not isinstance(other, CyclotomicInt) or other.p != self.p:
            return NotImplemented
        return other

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        vec = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    vec[(i + j) % p] += a * b
        return CyclotomicInt._reduce(p, vec)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.p, other)
        return isinstance(other, CyclotomicInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __int__(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "CyclotomicInt(p=%d: %s)" % (self.p, " + ".join(terms) or "0")


def additive_char(x: FieldElement) -> CyclotomicInt:
    """zeta^{Tr(x)}: the canonical non-trivial additive character of F_q."""
    return CyclotomicInt.zeta_power(x.field.p, x.trace())


def additive_char_code(field: Field, code: int) -> CyclotomicInt:
    return CyclotomicInt.zeta_power(field.p, field.trace_t[code])
