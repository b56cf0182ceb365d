"""Green polynomials of GL_n and Deligne-Lusztig character values.

Green polynomials come from the Hall-Littlewood transition matrix
``p_rho = sum_lambda X^lambda_rho(t) P_lambda(t)`` via
``Q^lambda_rho(q) = q^{n(lambda)} X^lambda_rho(1/q)``, where ``lambda`` is the
Jordan type of the unipotent element and ``rho`` the cycle type of ``w``.

For each integer q >= 2 we run an exact Gram-Schmidt of the monomial basis
(in an order refining dominance) under the Hall-Littlewood scalar product at
``t = 1/q``, where the form is positive definite.  The polynomials in q are
then recovered by Lagrange interpolation and self-checked.
"""

from __future__ import annotations

import csv
import functools
import io
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .qpoly import QPolynomial, lagrange_interpolate
from .weyl import (
    InvariantViolation,
    TypeLabel,
    assignment_classes,
    gl_order_pprime,
    n_stat,
    partitions,
    sign_of_cycle_type,
    torus_order,
    weyl_index,
    z_order,
)

DEFAULT_GREEN_BOUND = int(os.environ.get("PARABOLIC_COUNTS_GREEN_BOUND", "6"))


class GreenBoundError(ValueError):
    pass


def _check_bound(n, bound):
    bound = DEFAULT_GREEN_BOUND if bound is None else bound
    if n > bound:
        raise GreenBoundError(f"n = {n} exceeds the Green-table bound {bound}")
    if n < 1:
        raise ValueError("n must be positive")


@functools.cache
def power_to_monomial(n: int) -> dict:
    """Coefficient of m_mu in p_rho: ways to distribute the parts of rho into bins summing to mu."""
    parts = partitions(n)
    out = {}
    for rho in parts:
        for mu in parts:
            out[rho, mu] = _distribute(rho, mu)
    return out


def _distribute(rho, mu):
    def rec(i, bins):
        if i == len(rho):
            return 1 if all(b == 0 for b in bins) else 0
        total = 0
        for j in range(len(bins)):
            if bins[j] >= rho[i]:
                bins[j] -= rho[i]
                total += rec(i + 1, bins)
                bins[j] += rho[i]
        return total

    return rec(0, list(mu))


def _invert(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _green_values_at(n: int, q: int) -> dict:
    """Q^lambda_rho(q) for all lambda, rho at one integer q >= 2, exactly."""
    t = Fraction(1, q)
    parts = partitions(n)
    R = power_to_monomial(n)
    Rinv = _invert([[R[rho, mu] for mu in parts] for rho in parts])
    # m_lambda = sum_rho Rinv[lambda][rho] p_rho
    D = [Fraction(z_order(rho)) / math.prod(1 - t**r for r in rho) for rho in parts]

    def dot(u, v):
        return sum(a * b * d for a, b, d in zip(u, v, D))

    P = {}
    norms = {}
    for idx in range(len(parts) - 1, -1, -1):  # increasing lex order refines dominance
        lam = parts[idx]
        v = list(Rinv[idx])
        for mu, w in P.items():
            c = dot(v, w) / norms[mu]
            v = [a - c * b for a, b in zip(v, w)]
        P[lam] = v
        norms[lam] = dot(v, v)
    out = {}
    for lam in parts:
        for k, rho in enumerate(parts):
            x = D[k] * P[lam][k] / norms[lam]
            out[lam, rho] = x * q ** n_stat(lam)
    return out


@dataclass(frozen=True)
class GreenTable:
    n: int
    partitions: tuple
    entries: dict  # (lambda, rho) -> QPolynomial

    def __getitem__(self, key):
        return self.entries[key]

    def value(self, lam, rho, q):
        return self.entries[tuple(lam), tuple(rho)](q)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        fmt = lambda p: "[" + ",".join(map(str, p)) + "]"
        w.writerow(["lambda\\rho"] + [fmt(r) for r in self.partitions])
        for lam in self.partitions:
            w.writerow([fmt(lam)] + [str(self.entries[lam, r]) for r in self.partitions])
        return buf.getvalue()


@functools.cache
def _green_table(n: int) -> GreenTable:
    parts = tuple(partitions(n))
    top = n * (n - 1) // 2
    qs = list(range(2, top + 4))  # one node more than the degree bound needs
    samples = {q: _green_values_at(n, q) for q in qs}
    entries = {}
    for lam in parts:
        for rho in parts:
            poly = lagrange_interpolate(qs, [samples[q][lam, rho] for q in qs])
            if poly.degree > n_stat(lam):
                raise InvariantViolation(f"Green polynomial {lam},{rho} has degree {poly.degree}")
            if not poly.is_integral():
                raise InvariantViolation(f"Green polynomial {lam},{rho} = {poly} not integral")
            entries[lam, rho] = poly
    table = GreenTable(n, parts, entries)
    _self_check(table)
    return table


def _self_check(table: GreenTable):
    n = table.n
    for lam in table.partitions:
        avg = QPolynomial(())
        for rho in table.partitions:
            avg = avg + table[lam, rho] * Fraction(1, z_order(rho))
        if avg != 1:
            raise InvariantViolation(f"trivial-character decomposition fails at {lam}: {avg}")
    reg = (n,)
    for rho in table.partitions:
        if table[reg, rho] != 1:
            raise InvariantViolation("Green function at the regular unipotent is not 1")
    for rho in table.partitions:
        _steinberg_check(table, rho)


def _steinberg_check(table, rho):
    n = table.n
    expected = (gl_order_pprime(n) * sign_of_cycle_type(rho)).exact_div(torus_order(rho))
    got = table[(1,) * n, rho]
    if got != expected:
        raise InvariantViolation(f"degree of R_T(1) for {rho}: {got} != {expected}")
    return got


def green_table(n: int, bound=None) -> GreenTable:
    _check_bound(n, bound)
    return _green_table(n)


def hall_littlewood_transition(n: int, bound=None) -> dict:
    """X^lambda_rho(t) with p_rho = sum_lambda X^lambda_rho(t) P_lambda(t); integer polys in t."""
    table = green_table(n, bound)
    out = {}
    for (lam, rho), poly in table.entries.items():
        x = poly.reversed(n_stat(lam))
        out[lam, rho] = QPolynomial(x.coeffs, "t")
    return out


def steinberg_value(rho, n: int) -> QPolynomial:
    """Degree of R_{T_w}(1), checked against sign(rho) |GL_n|_{p'} / |T_w^F|."""
    return _steinberg_check(green_table(n), tuple(rho))


@functools.lru_cache(maxsize=None)
def green_value(lam, rho, q: int) -> int:
    return green_table(sum(lam)).value(lam, rho, q)


def dl_terms(rho, label: TypeLabel, q: int):
    """Per-embedding-class contributions to R_{T_w}^G(1)(g) for g of type ``label``.

    Yields ``(split_partitions, weyl_index, green_product)``.
    """
    shape = label.shape
    for split, (_, rep) in sorted(assignment_classes(shape, rho).items()):
        idx = weyl_index(shape, rho, rep)
        prod = 1
        for (d, m, lam), r in zip(label.factors, split):
            prod *= green_value(lam, r, q**d)
        yield split, idx, prod


def dl_value(rho, label: TypeLabel, q: int) -> int:
    """R_{T_w}^G(1) at an element of type ``label`` (w of cycle type ``rho``).

    Zero when the semisimple part does not embed in T_w.  When it embeds in
    several inequivalent ways the contributions add.
    """
    return sum(idx * prod for _, idx, prod in dl_terms(tuple(sorted(rho, reverse=True)), label, q))


def levi_dl_value(block_rhos, block_labels, q: int) -> int:
    """R_{T_w}^L(1) for L = prod GL_{n_i}, evaluated blockwise."""
    return math.prod(dl_value(r, lab, q) for r, lab in zip(block_rhos, block_labels))
