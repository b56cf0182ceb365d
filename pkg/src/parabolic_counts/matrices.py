"""Explicit matrix groups and Lie algebras over F_q; the brute-force oracle engine.

Matrices are tuples of field codes of length n*n in row-major order, so they
hash, compare, and sort lexicographically.  Everything here is exhaustive:
counts come from scanning explicit sets, never from formulas, with a budget
guard that refuses (rather than truncates) oversized enumerations.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .finite_field import Field, Poly, gf, lowest_irreducible, poly_factor
from .weyl import InvariantViolation, TypeLabel, conjugate, gl_order

Matrix = tuple

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"refusing to enumerate {what}: {size} elements exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


def current_budget() -> int:
    raw = os.environ.get("PARABOLIC_COUNTS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("PARABOLIC_COUNTS_BUDGET must be positive")
    return value


def _guard(what: str, size: int, budget: Optional[int]):
    budget = current_budget() if budget is None else budget
    if size > budget:
        raise BudgetExceeded(what, size, budget)


# -- specs ---------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    field: Field

    def __post_init__(self):
        if self.kind not in ("GL", "SL"):
            raise ValueError(f"group kind must be GL or SL, got {self.kind!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")

    @classmethod
    def make(cls, kind: str, n: int, q: int) -> "GroupSpec":
        return cls(kind, n, gf(q))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def order(self) -> int:
        o = gl_order(self.n, self.q)
        return o if self.kind == "GL" else o // (self.q - 1)

    @property
    def lie_size(self) -> int:
        d = self.n * self.n - (1 if self.kind == "SL" else 0)
        return self.q**d

    def check_lie(self):
        """The trace form on sl_n is nondegenerate only when p does not divide n."""
        if self.kind == "SL" and self.n % self.p == 0:
            raise ValueError("κ degenerate: p | n")

    def __str__(self):
        return f"{self.kind}{self.n}(F_{self.q})"


@dataclass(frozen=True)
class ParabolicSpec:
    composition: tuple

    def __post_init__(self):
        comp = tuple(int(c) for c in self.composition)
        if not comp or any(c < 1 for c in comp):
            raise ValueError(f"bad composition {self.composition!r}")
        object.__setattr__(self, "composition", comp)

    @classmethod
    def parse(cls, text: str) -> "ParabolicSpec":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()))

    @property
    def n(self) -> int:
        return sum(self.composition)

    @functools.cached_property
    def block_index(self) -> tuple:
        return tuple(b for b, size in enumerate(self.composition) for _ in range(size))

    @functools.cached_property
    def prefixes(self) -> tuple:
        return tuple(itertools.accumulate(self.composition))[:-1]

    def in_parabolic(self, i, j):
        return self.block_index[i] <= self.block_index[j]

    def in_levi(self, i, j):
        return self.block_index[i] == self.block_index[j]

    def in_nilradical(self, i, j):
        return self.block_index[i] < self.block_index[j]

    def blocks(self):
        start = 0
        for size in self.composition:
            yield start, start + size
            start += size

    def check(self, n: int):
        if self.n != n:
            raise ValueError(f"composition {self.composition} does not sum to {n}")

    def __str__(self):
        return ",".join(map(str, self.composition))


# -- linear algebra over F_q -----------------------------------------------------

class MatrixAlgebra:
    """n x n matrices over a field, as flat tuples of codes."""

    def __init__(self, field: Field, n: int):
        self.F = field
        self.n = n
        self.identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
        self.zero = (0,) * (n * n)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        n, add, mul = self.n, self.F.add_t, self.F.mul_t
        out = []
        for i in range(n):
            row = a[i * n:(i + 1) * n]
            for j in range(n):
                s = 0
                for k in range(n):
                    if row[k]:
                        s = add[s][mul[row[k]][b[k * n + j]]]
                out.append(s)
        return tuple(out)

    def add(self, a, b):
        t = self.F.add_t
        return tuple(t[x][y] for x, y in zip(a, b))

    def sub(self, a, b):
        t = self.F.sub_t
        return tuple(t[x][y] for x, y in zip(a, b))

    def neg(self, a):
        t = self.F.neg_t
        return tuple(t[x] for x in a)

    def scale(self, c, a):
        t = self.F.mul_t[c]
        return tuple(t[x] for x in a)

    def scalar(self, c):
        return self.scale(c, self.identity)

    def trace(self, a) -> int:
        s = 0
        for i in range(self.n):
            s = self.F.add_t[s][a[i * self.n + i]]
        return s

    def power(self, a, e: int):
        result, base = self.identity, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def rows(self, a):
        n = self.n
        return [list(a[i * n:(i + 1) * n]) for i in range(n)]

    def det(self, a) -> int:
        return _det(self.F, self.rows(a))

    def rank(self, a) -> int:
        return len(rref(self.F, self.rows(a)))

    def is_invertible(self, a) -> bool:
        return self.det(a) != 0

    def inverse(self, a):
        F, n = self.F, self.n
        m = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows(a))]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            inv = F.inv_t[m[c][c]]
            m[c] = [F.mul_t[inv][x] for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub_t[x][F.mul_t[f][y]] for x, y in zip(m[r], m[c])]
        return tuple(x for row in m for x in row[n:])

    def conj(self, g, x, g_inv=None):
        """g x g^{-1}."""
        if g_inv is None:
            g_inv = self.inverse(g)
        return self.mul(self.mul(g, x), g_inv)

    def charpoly(self, a) -> Poly:
        """det(x I - a) by the division-free Berkowitz recursion."""
        F = self.F
        vec = _berkowitz(F, self.rows(a))  # highest degree first
        return Poly(F, list(reversed(vec)))

    def poly_eval(self, f: Poly, a):
        out = self.zero
        for c in reversed(f.coeffs):
            out = self.add(self.mul(out, a), self.scalar(c))
        return out

    def order(self, a) -> int:
        """Multiplicative order of an invertible matrix."""
        bound = self.F.q**self.n * self.n  # exceeds every element order
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
            if k > bound:
                raise ZeroDivisionError("matrix is not invertible")
        return k

    def is_nilpotent(self, a) -> bool:
        return self.power(a, self.n) == self.zero

    def kernel_dim(self, a) -> int:
        return self.n - self.rank(a)


def rref(F: Field, rows) -> list[list[int]]:
    """Nonzero rows of the reduced row echelon form."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    lead = 0
    out_rows = 0
    for c in range(ncols):
        piv = next((r for r in range(out_rows, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        inv = F.inv_t[m[out_rows][c]]
        m[out_rows] = [F.mul_t[inv][x] for x in m[out_rows]]
        for r in range(len(m)):
            if r != out_rows and m[r][c]:
                f = m[r][c]
                m[r] = [F.sub_t[x][F.mul_t[f][y]] for x, y in zip(m[r], m[out_rows])]
        out_rows += 1
        lead += 1
        if out_rows == len(m):
            break
    return [r for r in m[:out_rows]]


def nullspace(F: Field, rows, ncols: int) -> list[list[int]]:
    """A basis of {v : rows . v = 0}."""
    red = rref(F, rows) if rows else []
    pivots = []
    for r in red:
        pivots.append(next(i for i, x in enumerate(r) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in zip(red, pivots):
            v[pc] = F.neg_t[r[f]]
        basis.append(v)
    return basis


def span(F: Field, basis) -> Iterator[tuple]:
    """All F-linear combinations of ``basis`` in lexicographic coefficient order."""
    if not basis:
        yield ()
        return
    dim = len(basis[0])
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        v = [0] * dim
        for c, b in zip(coeffs, basis):
            if c:
                row = F.mul_t[c]
                v = [F.add_t[x][row[y]] for x, y in zip(v, b)]
        yield tuple(v)


def _det(F: Field, m) -> int:
    m = [list(r) for r in m]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg_t[det]
        det = F.mul_t[det][m[c][c]]
        inv = F.inv_t[m[c][c]]
        for r in range(c + 1, n):
            if m[r][c]:
                f = F.mul_t[m[r][c]][inv]
                m[r] = [F.sub_t[x][F.mul_t[f][y]] for x, y in zip(m[r], m[c])]
    return det


def _berkowitz(F: Field, m) -> list[int]:
    n = len(m)
    if n == 0:
        return [1]
    if n == 1:
        return [1, F.neg_t[m[0][0]]]
    a = m[0][0]
    R = m[0][1:]
    C = [row[0] for row in m[1:]]
    A = [row[1:] for row in m[1:]]

    def matvec(M, v):
        out = []
        for row in M:
            s = 0
            for x, y in zip(row, v):
                s = F.add_t[s][F.mul_t[x][y]]
            out.append(s)
        return out

    def dot(u, v):
        s = 0
        for x, y in zip(u, v):
            s = F.add_t[s][F.mul_t[x][y]]
        return s

    diags, cur = [], C
    for _ in range(n - 1):
        diags.append(F.neg_t[dot(R, cur)])
        cur = matvec(A, cur)
    seq = [1, F.neg_t[a]] + diags
    sub = _berkowitz(F, A)
    out = []
    for i in range(n + 1):
        s = 0
        for j in range(n):
            if j <= i:
                s = F.add_t[s][F.mul_t[seq[i - j]][sub[j]]]
        out.append(s)
    return out


# -- serialization -----------------------------------------------------------------

def serialize_matrix(a: Matrix) -> str:
    return ";".join(map(str, a))


def parse_matrix(text: str, field: Field) -> Matrix:
    entries = tuple(int(x) for x in text.split(";"))
    n = math.isqrt(len(entries))
    if n * n != len(entries) or any(not 0 <= x < field.q for x in entries):
        raise ValueError(f"bad matrix string {text!r}")
    return entries


def matrix_from_rows(field: Field, rows) -> Matrix:
    return tuple(field.from_int(x) if isinstance(x, int) else x.code for r in rows for x in r)


# -- enumerations -----------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def algebra(group: GroupSpec) -> MatrixAlgebra:
    return MatrixAlgebra(group.field, group.n)


def _sorted_cache(key, builder):
    if key not in _ENUM_CACHE:
        _ENUM_CACHE[key] = tuple(sorted(builder()))
    return _ENUM_CACHE[key]


_ENUM_CACHE: dict = {}


def clear_caches():
    _ENUM_CACHE.clear()
    _TRANSVERSALS.clear()


def _gl_rows(F: Field, n: int, width: int) -> Iterator[tuple]:
    """Linearly independent n-tuples of row vectors of length ``width``, lex order."""
    vectors = list(itertools.product(range(F.q), repeat=width))

    def rec(chosen, span_set):
        if len(chosen) == n:
            yield tuple(x for row in chosen for x in row)
            return
        for v in vectors:
            if v in span_set:
                continue
            new_span = set(span_set)
            for s in span_set:
                for c in range(F.q):
                    new_span.add(tuple(F.add_t[x][F.mul_t[c][y]] for x, y in zip(s, v)))
            yield from rec(chosen + [v], new_span)

    yield from rec([], {(0,) * width})


def enumerate_group(group: GroupSpec, budget=None) -> tuple:
    _guard(str(group), group.order, budget)

    def build():
        M = algebra(group)
        for g in _gl_rows(group.field, group.n, group.n):
            if group.kind == "GL" or M.det(g) == 1:
                yield g

    return _sorted_cache(("G", group), build)


def _pattern_matrices(F: Field, n: int, allowed) -> Iterator[tuple]:
    cells = [(i, j) for i in range(n) for j in range(n) if allowed(i, j)]
    for vals in itertools.product(range(F.q), repeat=len(cells)):
        m = [0] * (n * n)
        for (i, j), v in zip(cells, vals):
            m[i * n + j] = v
        yield tuple(m)


def _levi_group(group: GroupSpec, par: ParabolicSpec):
    """Block-diagonal invertible matrices (det condition applied by the caller)."""
    F, n = group.field, group.n
    block_lists = [list(_gl_rows(F, b - a, b - a)) for a, b in par.blocks()]
    for combo in itertools.product(*block_lists):
        m = [0] * (n * n)
        for (a, b), blk in zip(par.blocks(), combo):
            k = b - a
            for i in range(k):
                for j in range(k):
                    m[(a + i) * n + a + j] = blk[i * k + j]
        yield tuple(m)


def _order_levi(group, par):
    o = math.prod(gl_order(k, group.q) for k in par.composition)
    return o if group.kind == "GL" else o // (group.q - 1)


def _nil_dim(par: ParabolicSpec) -> int:
    n = par.n
    return (n * n - sum(k * k for k in par.composition)) // 2


def enumerate_levi(group: GroupSpec, par: ParabolicSpec, budget=None) -> tuple:
    par.check(group.n)
    _guard(f"Levi {par} of {group}", _order_levi(group, par), budget)

    def build():
        M = algebra(group)
        for g in _levi_group(group, par):
            if group.kind == "GL" or M.det(g) == 1:
                yield g

    return _sorted_cache(("L", group, par), build)


def enumerate_unipotent_radical(group: GroupSpec, par: ParabolicSpec, budget=None) -> tuple:
    par.check(group.n)
    _guard(f"unipotent radical {par} of {group}", group.q ** _nil_dim(par), budget)
    M = algebra(group)
    return _sorted_cache(("U", group, par), lambda: (
        M.add(M.identity, x) for x in _pattern_matrices(group.field, group.n, par.in_nilradical)))


def enumerate_parabolic(group: GroupSpec, par: ParabolicSpec, budget=None) -> tuple:
    par.check(group.n)
    size = _order_levi(group, par) * group.q ** _nil_dim(par)
    _guard(f"parabolic {par} of {group}", size, budget)
    M = algebra(group)

    def build():
        L = enumerate_levi(group, par, budget)
        U = enumerate_unipotent_radical(group, par, budget)
        for l in L:
            for u in U:
                yield M.mul(l, u)

    out = _sorted_cache(("P", group, par), build)
    if len(out) != size:
        raise InvariantViolation(f"|P^F| = {len(out)} but |L^F||U^F| = {size}")
    return out


def enumerate_lie(group: GroupSpec, budget=None) -> tuple:
    _guard(f"Lie algebra of {group}", group.lie_size, budget)
    M = algebra(group)
    return _sorted_cache(("g", group), lambda: (
        x for x in _pattern_matrices(group.field, group.n, lambda i, j: True)
        if group.kind == "GL" or M.trace(x) == 0))


def _lie_pattern(group, par, allowed, tag, budget):
    par.check(group.n)
    cells = sum(1 for i in range(group.n) for j in range(group.n) if allowed(i, j))
    size = group.q ** (cells - (1 if group.kind == "SL" and tag != "n" else 0))
    _guard(f"{tag} {par} of {group}", size, budget)
    M = algebra(group)
    return _sorted_cache((tag, group, par), lambda: (
        x for x in _pattern_matrices(group.field, group.n, allowed)
        if group.kind == "GL" or M.trace(x) == 0))


def enumerate_lie_parabolic(group, par, budget=None):
    return _lie_pattern(group, par, par.in_parabolic, "p", budget)


def enumerate_lie_levi(group, par, budget=None):
    return _lie_pattern(group, par, par.in_levi, "l", budget)


def enumerate_nilradical(group, par, budget=None):
    return _lie_pattern(group, par, par.in_nilradical, "n", budget)


def in_pattern(x: Matrix, n: int, allowed) -> bool:
    return all(x[i * n + j] == 0 for i in range(n) for j in range(n) if not allowed(i, j))


def levi_projection(x: Matrix, par: ParabolicSpec) -> Matrix:
    n = par.n
    return tuple(v if par.in_levi(k // n, k % n) else 0 for k, v in enumerate(x))


# -- Jordan decompositions -----------------------------------------------------------

@dataclass(frozen=True)
class JordanPairMult:
    semisimple: Matrix
    unipotent: Matrix


@dataclass(frozen=True)
class JordanPairAdd:
    semisimple: Matrix
    nilpotent: Matrix


def squarefree_part(f: Poly) -> Poly:
    out = Poly.constant(f.field, 1)
    for g, _ in poly_factor(f):
        out = out * g
    return out


def is_semisimple(M: MatrixAlgebra, a: Matrix) -> bool:
    return M.poly_eval(squarefree_part(M.charpoly(a)), a) == M.zero


def jordan_mult(M: MatrixAlgebra, g: Matrix, check: bool = True) -> JordanPairMult:
    if not M.is_invertible(g):
        raise ValueError("jordan_mult needs an invertible matrix")
    p = M.F.p
    order = M.order(g)
    t_part = 1
    while order % (t_part * p) == 0:
        t_part *= p
    s_part = order // t_part
    if s_part == 1:
        gs = M.identity
    else:
        # p^t c = 1 mod s kills the p-part and fixes the p'-part
        gs = M.power(g, t_part * pow(t_part, -1, s_part))
    gu = M.mul(g, M.inverse(gs))
    pair = JordanPairMult(gs, gu)
    if check:
        _check_mult(M, g, pair)
    return pair


def _check_mult(M, g, pair):
    s, u = pair.semisimple, pair.unipotent
    if M.mul(s, u) != g or M.mul(u, s) != g:
        raise InvariantViolation("multiplicative Jordan parts do not recombine or commute")
    if not is_semisimple(M, s):
        raise InvariantViolation("semisimple part is not semisimple")
    if not M.is_nilpotent(M.sub(u, M.identity)):
        raise InvariantViolation("unipotent part is not unipotent")


def jordan_add(M: MatrixAlgebra, x: Matrix, check: bool = True) -> JordanPairAdd:
    r = squarefree_part(M.charpoly(x))
    dr = r.derivative()
    y = x
    for _ in range(M.n + 2):
        ry = M.poly_eval(r, y)
        if ry == M.zero:
            break
        y = M.sub(y, M.mul(ry, M.inverse(M.poly_eval(dr, y))))
    else:
        raise InvariantViolation("Newton iteration for the semisimple part did not converge")
    pair = JordanPairAdd(y, M.sub(x, y))
    if check:
        s, nil = pair.semisimple, pair.nilpotent
        if M.add(s, nil) != x or M.mul(s, nil) != M.mul(nil, s):
            raise InvariantViolation("additive Jordan parts do not recombine or commute")
        if not is_semisimple(M, s) or not M.is_nilpotent(nil):
            raise InvariantViolation("additive Jordan parts have the wrong nature")
    return pair


# -- centralizers and Burnside -------------------------------------------------------

def commutant_basis(M: MatrixAlgebra, x: Matrix) -> list:
    """Basis of {y : x y = y x} as flat vectors."""
    n, F = M.n, M.F
    eqs = []
    for i in range(n):
        for j in range(n):
            # (x y - y x)_{ij} = sum_k x_ik y_kj - y_ik x_kj
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = F.add_t[row[k * n + j]][x[i * n + k]]
                row[i * n + k] = F.sub_t[row[i * n + k]][x[k * n + j]]
            eqs.append(row)
    return nullspace(F, eqs, n * n)


def centralizer_order(group: GroupSpec, x: Matrix, budget=None) -> int:
    """|{g in G^F : g x g^{-1} = x}| by scanning the commutant of x."""
    M = algebra(group)
    basis = commutant_basis(M, x)
    _guard(f"commutant of {serialize_matrix(x)}", group.q ** len(basis), budget)
    want = (lambda d: d == 1) if group.kind == "SL" else (lambda d: d != 0)
    return sum(1 for y in span(group.field, basis) if want(M.det(y)))


def centralizer_order_scan(group: GroupSpec, x: Matrix, budget=None) -> int:
    """Same count by scanning all of G^F (independent of the commutant solver)."""
    M = algebra(group)
    return sum(1 for g in enumerate_group(group, budget) if M.mul(g, x) == M.mul(x, g))


def burnside_count(acting: Iterable, acted: Iterable, action: Callable) -> int:
    """Number of orbits; the Burnside division is asserted exact."""
    acting = list(acting)
    acted = list(acted)
    total = sum(1 for h in acting for s in acted if action(h, s) == s)
    if total % len(acting):
        raise InvariantViolation(f"non-integral Burnside count {total}/{len(acting)}")
    return total // len(acting)


def conjugation_action(group: GroupSpec):
    M = algebra(group)
    cache = {}

    def act(h, s):
        if h not in cache:
            cache[h] = M.inverse(h)
        return M.mul(M.mul(h, s), cache[h])

    return act


def orbit(group: GroupSpec, x: Matrix, budget=None) -> frozenset:
    M = algebra(group)
    return frozenset(M.conj(g, x) for g in enumerate_group(group, budget))


def orbit_representatives(ambient: Iterable, group: GroupSpec, meeting: Optional[Iterable] = None,
                          budget=None) -> list:
    """Least representative (enumeration order) of each orbit meeting ``meeting``."""
    target = None if meeting is None else set(meeting)
    seen: set = set()
    reps = []
    for x in sorted(ambient):
        if x in seen:
            continue
        orb = orbit(group, x, budget)
        seen |= orb
        if target is None or not orb.isdisjoint(target):
            reps.append(x)
    return reps


def orbit_records(group: GroupSpec, par: Optional[ParabolicSpec], reps) -> list[dict]:
    out = []
    for r in reps:
        c = centralizer_order(group, r)
        out.append({"group": str(group), "parabolic": str(par) if par else None,
                    "representative": serialize_matrix(r),
                    "orbit_size": group.order // c, "centralizer_order": c})
    return out


def orbit_report_json(group, par, reps) -> str:
    return json.dumps(orbit_records(group, par, reps), indent=2, sort_keys=True)


# -- flags, cosets and f-functions -------------------------------------------------

def flag_key(M: MatrixAlgebra, g: Matrix, par: ParabolicSpec) -> tuple:
    """The partial flag g . (standard flag) as a tuple of RREF column spans."""
    n = M.n
    cols = [[g[i * n + j] for i in range(n)] for j in range(n)]
    return tuple(tuple(map(tuple, rref(M.F, cols[:k]))) for k in par.prefixes)


_TRANSVERSALS: dict = {}


def coset_transversal(group: GroupSpec, par: ParabolicSpec, budget=None) -> tuple:
    """Least element of every left coset gP^F, found once by flag keys and cached."""
    par.check(group.n)
    key = (group, par)
    if key not in _TRANSVERSALS:
        M = algebra(group)
        reps = {}
        for g in enumerate_group(group, budget):
            reps.setdefault(flag_key(M, g, par), g)
        index = group.order // len(enumerate_parabolic(group, par, budget))
        if len(reps) != index:
            raise InvariantViolation(f"found {len(reps)} flags, expected [G:P] = {index}")
        _TRANSVERSALS[key] = tuple((g, M.inverse(g)) for g in reps.values())
    return _TRANSVERSALS[key]


def _count_conjugates(group, par, x, allowed, budget):
    M = algebra(group)
    n = group.n
    return sum(1 for g, gi in coset_transversal(group, par, budget)
               if in_pattern(M.mul(M.mul(gi, x), g), n, allowed))


def f_parabolic_group(group: GroupSpec, x: Matrix, par: ParabolicSpec, budget=None) -> int:
    """Number of G^F-conjugates of P^F containing x."""
    return _count_conjugates(group, par, x, par.in_parabolic, budget)


def f_parabolic_lie(group: GroupSpec, x: Matrix, par: ParabolicSpec, budget=None) -> int:
    return _count_conjugates(group, par, x, par.in_parabolic, budget)


def f_nilradical_lie(group: GroupSpec, x: Matrix, par: ParabolicSpec, budget=None) -> int:
    return _count_conjugates(group, par, x, par.in_nilradical, budget)


# -- classification by type ------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _factor_cached(field: Field, coeffs: tuple):
    return tuple(poly_factor(Poly(field, coeffs)))


def class_data(M: MatrixAlgebra, x: Matrix):
    """(class key, TypeLabel) of x under GL_n(F_q)-conjugation.

    For each irreducible factor f (degree d, multiplicity m) of the
    characteristic polynomial, the Jordan type lambda of the unipotent (or
    nilpotent) part in GL_m(F_{q^d}) is read off from dim ker f(x)^k.
    """
    factors = _factor_cached(M.F, M.charpoly(x).coeffs)
    key, label = [], []
    for f, m in factors:
        d = f.degree
        fx = M.poly_eval(f, x)
        dims, y = [0], M.identity
        for _ in range(m):
            y = M.mul(y, fx)
            dims.append(M.kernel_dim(y))
        lc = tuple((dims[k] - dims[k - 1]) // d for k in range(1, m + 1))
        lam = conjugate(tuple(c for c in lc if c))
        if sum(lam) != m:
            raise InvariantViolation(f"kernel dimensions {dims} inconsistent with multiplicity {m}")
        key.append((f.coeffs, lam))
        label.append((d, m, lam))
    return tuple(key), TypeLabel(tuple(label))


def type_of(group: GroupSpec, x: Matrix) -> TypeLabel:
    return class_data(algebra(group), x)[1]


def jordan_normal_form(group: GroupSpec, label_key) -> Matrix:
    """A canonical matrix with the given class key: companion-type blocks per factor.

    Each Jordan block of size k for factor f (degree d) is realized as a
    block-companion matrix of f with identity couplings, which has
    elementary divisor f^k.
    """
    F, n = group.field, group.n
    m = [0] * (n * n)
    pos = 0
    for coeffs, lam in label_key:
        f = Poly(F, coeffs)
        d = f.degree
        comp = companion(f)
        for k in lam:
            for b in range(k):
                base = pos + b * d
                for i in range(d):
                    for j in range(d):
                        m[(base + i) * n + base + j] = comp[i * d + j]
                if b + 1 < k:
                    for i in range(d):
                        m[(base + i) * n + base + d + i] = 1
            pos += k * d
    if pos != n:
        raise ValueError("class key does not describe an n x n matrix")
    return tuple(m)


def companion(f: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    F = f.field
    d = f.degree
    m = [0] * (d * d)
    for i in range(1, d):
        m[i * d + i - 1] = 1
    for i in range(d):
        m[i * d + d - 1] = F.neg_t[f.coeffs[i]]
    return tuple(m)


# -- twisted tori --------------------------------------------------------------------

def block_diagonal(blocks, n: int) -> Matrix:
    m = [0] * (n * n)
    pos = 0
    for blk in blocks:
        k = math.isqrt(len(blk))
        for i in range(k):
            for j in range(k):
                m[(pos + i) * n + pos + j] = blk[i * k + j]
        pos += k
    return tuple(m)


@functools.lru_cache(maxsize=None)
def _block_field(field: Field, r: int) -> tuple:
    """All a(C) for C the companion of the lowest degree-r irreducible, a of degree < r."""
    C = companion(lowest_irreducible(field, r))
    A = MatrixAlgebra(field, r)
    powers = [A.identity]
    for _ in range(r - 1):
        powers.append(A.mul(powers[-1], C))
    out = []
    for coeffs in itertools.product(range(field.q), repeat=r):
        v = A.zero
        for c, pw in zip(coeffs, powers):
            if c:
                v = A.add(v, A.scale(c, pw))
        out.append(v)
    return tuple(out)


def torus_lie_elements(field: Field, rho) -> list:
    """t_w^F realized in gl_n(F_q) as block-diagonal elements of F_q[C_i]."""
    n = sum(rho)
    return [block_diagonal(b, n) for b in itertools.product(*(_block_field(field, r) for r in rho))]


def torus_lie_blocks(field: Field, rho) -> list:
    """Elements of t_w^F as tuples of blocks (one r x r block per cycle)."""
    return list(itertools.product(*(_block_field(field, r) for r in rho)))


def torus_group_elements(field: Field, rho) -> list:
    n = sum(rho)
    nonzero = [[b for b in _block_field(field, r) if any(b)] for r in rho]
    return [block_diagonal(b, n) for b in itertools.product(*nonzero)]


# -- structural lemma checks ----------------------------------------------------------

def normalizer_of_parabolic(group: GroupSpec, par: ParabolicSpec, lie: bool = False, budget=None) -> int:
    """|N_{G^F}(P^F)| (or of p^F) by exhaustive scan."""
    M = algebra(group)
    n = group.n
    if lie:
        basis = [tuple(1 if k == i * n + j else 0 for k in range(n * n))
                 for i in range(n) for j in range(n) if par.in_parabolic(i, j)]
        count = 0
        for g in enumerate_group(group, budget):
            gi = M.inverse(g)
            if all(in_pattern(M.mul(M.mul(g, e), gi), n, par.in_parabolic) for e in basis):
                count += 1
        return count
    P = enumerate_parabolic(group, par, budget)
    count = 0
    for g in enumerate_group(group, budget):
        gi = M.inverse(g)
        if all(in_pattern(M.mul(M.mul(g, p), gi), n, par.in_parabolic) for p in P):
            count += 1
    return count


def semisimple_into_levi(group: GroupSpec, par: ParabolicSpec, lie: bool = False, budget=None):
    """Witnesses that semisimple parts of elements of P^F (or p^F) are P^F-conjugate into L^F.

    Returns ``(checked, failures)`` where ``failures`` lists elements whose
    semisimple part admits no such conjugate.
    """
    M = algebra(group)
    n = group.n
    P = enumerate_parabolic(group, par, budget)
    P_inv = [(p, M.inverse(p)) for p in P]
    ambient = enumerate_lie_parabolic(group, par, budget) if lie else P
    semis = {}
    for x in ambient:
        s = jordan_add(M, x).semisimple if lie else jordan_mult(M, x).semisimple
        semis.setdefault(s, x)
    failures = []
    for s, x in semis.items():
        if not any(in_pattern(M.mul(M.mul(p, s), pi), n, par.in_levi) for p, pi in P_inv):
            failures.append(x)
    return len(ambient), failures


def double_count_check(group: GroupSpec, par: ParabolicSpec, x: Matrix, budget=None) -> tuple:
    """Both sides of |G:N(p)| |Ad(x) ∩ p| = |Ad(x)| f_p(x)."""
    n = group.n
    orb = orbit(group, x, budget)
    meet = sum(1 for y in orb if in_pattern(y, n, par.in_parabolic))
    norm = normalizer_of_parabolic(group, par, lie=True, budget=budget)
    lhs = group.order // norm * meet
    rhs = len(orb) * f_parabolic_lie(group, x, par, budget)
    return lhs, rhs
