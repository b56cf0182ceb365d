"""Partitions, Weyl groups of GL_n and its Levis, twisted tori, and type labels.

A semisimple class of GL_n(F_q) is described by the degrees ``d`` and
multiplicities ``m`` of the irreducible factors of its characteristic
polynomial; its centralizer is the product of GL_m(F_{q^d}).  A *type* adds
a partition of each ``m`` for the unipotent (or nilpotent) part.  A twisted
torus T_w depends only on the cycle type ``rho`` of ``w`` in S_n and has
``|T_w^F| = prod (q^{rho_i} - 1)``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .qpoly import QPolynomial

Partition = tuple


class InvariantViolation(AssertionError):
    """An exact identity the code relies on failed (signals a bug, not bad input)."""


def partitions(n: int, max_part: Optional[int] = None) -> list[Partition]:
    """Partitions of ``n`` in decreasing lexicographic order: (n), (n-1,1), ..., (1^n)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def n_stat(lam: Partition) -> int:
    """n(lambda) = sum (i-1) lambda_i."""
    return sum(i * x for i, x in enumerate(lam))


def z_order(rho: Partition) -> int:
    """Order of the centralizer in S_n of a permutation of cycle type ``rho``."""
    out = 1
    for part, mult in Counter(rho).items():
        out *= part**mult * math.factorial(mult)
    return out


def torus_order(rho: Partition, q=None):
    """|T_w^F| = prod (q^{rho_i} - 1); a QPolynomial when ``q`` is None."""
    if q is None:
        out = QPolynomial.constant(1)
        for r in rho:
            out = out * (QPolynomial.gen() ** r - 1)
        return out
    out = 1
    for r in rho:
        out *= q**r - 1
    return out


def lie_torus_order(rho: Partition, q=None):
    """|t_w^F| = q^{|rho|}."""
    if q is None:
        return QPolynomial.gen() ** sum(rho)
    return q ** sum(rho)


def gl_order(n: int, q=None):
    if q is None:
        Q = QPolynomial.gen()
        out = QPolynomial.constant(1)
        for i in range(n):
            out = out * (Q**n - Q**i)
        return out
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def gl_order_pprime(n: int, q=None):
    """Prime-to-p part of |GL_n(F_q)|: prod_{i<=n} (q^i - 1)."""
    if q is None:
        Q = QPolynomial.gen()
        out = QPolynomial.constant(1)
        for i in range(1, n + 1):
            out = out * (Q**i - 1)
        return out
    out = 1
    for i in range(1, n + 1):
        out *= q**i - 1
    return out


def unipotent_centralizer_order(lam: Partition, q: int) -> int:
    """|C_{GL_m(F_q)}(u)| for a unipotent u of Jordan type ``lam``."""
    lc = conjugate(lam)
    out = q ** sum(x * x for x in lc)
    frac = Fraction(out)
    for mult in Counter(lam).values():
        for j in range(1, mult + 1):
            frac *= 1 - Fraction(1, q**j)
    if frac.denominator != 1:
        raise InvariantViolation("non-integral centralizer order")
    return int(frac)


def sign_of_cycle_type(rho: Partition) -> int:
    return (-1) ** (sum(rho) - len(rho))


def compositions(n: int) -> list[tuple[int, ...]]:
    """All ordered compositions of ``n``."""
    out = []
    for cuts in itertools.product((0, 1), repeat=n - 1):
        comp, cur = [], 1
        for c in cuts:
            if c:
                comp.append(cur)
                cur = 1
            else:
                cur += 1
        comp.append(cur)
        out.append(tuple(comp))
    return sorted(out, key=lambda c: (len(c), tuple(-x for x in c)))


def weyl_levi_order(composition) -> int:
    out = 1
    for k in composition:
        out *= math.factorial(k)
    return out


def levi_cycle_types(composition) -> dict[Partition, int]:
    """Number of w in W_L = prod S_{n_i} with each overall cycle type."""
    out: Counter = Counter()
    per_block = [[(rho, math.factorial(k) // z_order(rho)) for rho in partitions(k)]
                 for k in composition]
    for combo in itertools.product(*per_block):
        rho = tuple(sorted((r for part, _ in combo for r in part), reverse=True))
        out[rho] += math.prod(c for _, c in combo)
    return dict(out)


def levi_block_cycle_types(composition):
    """Per-block cycle types of W_L elements: list of (tuple of rho_i, count)."""
    per_block = [[(rho, math.factorial(k) // z_order(rho)) for rho in partitions(k)]
                 for k in composition]
    return [(tuple(r for r, _ in combo), math.prod(c for _, c in combo))
            for combo in itertools.product(*per_block)]


def relative_ranks(kind: str, n: int, composition) -> tuple[int, int]:
    """F_q-ranks (eps_G, eps_L) of a split group and a split Levi."""
    if sum(composition) != n:
        raise ValueError("composition does not sum to n")
    if kind == "GL":
        return n, n
    if kind == "SL":
        return n - 1, n - 1
    raise ValueError(f"unknown group kind {kind!r}")


def torus_rank(kind: str, rho: Partition) -> int:
    return len(rho) - (1 if kind == "SL" else 0)


# -- type labels ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TypeLabel:
    """Centralizer shape with a partition per factor: ((d, m, lambda), ...) sorted."""

    factors: tuple

    def __post_init__(self):
        for d, m, lam in self.factors:
            if sum(lam) != m or d < 1:
                raise ValueError(f"bad type factor {(d, m, lam)}")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @property
    def shape(self):
        return tuple((d, m) for d, m, _ in self.factors)

    @property
    def n(self):
        return sum(d * m for d, m, _ in self.factors)

    def __str__(self):
        return "{" + ";".join(f"({d},{m}):[{','.join(map(str, lam))}]"
                              for d, m, lam in self.factors) + "}"

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"bad type label {text!r}")
        factors = []
        for item in filter(None, body[1:-1].split(";")):
            m = re.fullmatch(r"\((\d+),(\d+)\):\[([\d,]*)\]", item)
            if not m:
                raise ValueError(f"bad type factor {item!r}")
            lam = tuple(int(x) for x in m.group(3).split(",") if x)
            factors.append((int(m.group(1)), int(m.group(2)), lam))
        return cls(tuple(factors))


def _shapes(n: int, min_pair=(1, 1)):
    """Multisets of (d, m) with sum d*m = n, as non-decreasing tuples."""
    if n == 0:
        yield ()
        return
    for d in range(min_pair[0], n + 1):
        for m in range(1, n // d + 1):
            if (d, m) < min_pair:
                continue
            for rest in _shapes(n - d * m, (d, m)):
                yield ((d, m),) + rest


def assignments(shape, rho: Partition):
    """All maps cycle index -> factor index embedding the semisimple part in T_rho.

    A cycle of length ``rho_i`` can host factor ``j`` only if ``d_j`` divides it,
    and then contributes ``rho_i / d_j`` to that factor's multiplicity.
    """
    need = [m for _, m in shape]
    degs = [d for d, _ in shape]
    k = len(rho)

    def rec(i, remaining, acc):
        if i == k:
            if not any(remaining):
                yield tuple(acc)
            return
        for j, d in enumerate(degs):
            r = rho[i]
            if r % d == 0 and remaining[j] >= r // d:
                remaining[j] -= r // d
                acc.append(j)
                yield from rec(i + 1, remaining, acc)
                acc.pop()
                remaining[j] += r // d

    if sum(d * m for d, m in shape) != sum(rho):
        return
    yield from rec(0, list(need), [])


def delta_membership(shape, rho: Partition) -> Optional[tuple[int, ...]]:
    """A witness assignment if the semisimple part embeds in T_rho, else None.

    Cycles are visited in decreasing length and factors in index order, so the
    witness is deterministic.
    """
    for a in assignments(shape, tuple(sorted(rho, reverse=True))):
        return a
    return None


def split_partitions(shape, rho: Partition, assignment) -> tuple[Partition, ...]:
    """Cycle type rho^(j) of the torus inside each centralizer factor GL_{m_j}(q^{d_j})."""
    rho = tuple(sorted(rho, reverse=True))
    parts = [[] for _ in shape]
    for i, j in enumerate(assignment):
        parts[j].append(rho[i] // shape[j][0])
    return tuple(tuple(sorted(p, reverse=True)) for p in parts)


def weyl_index(shape, rho: Partition, assignment) -> int:
    """|W_G(T_w)^F / W_xi(T_w)^F| = z_rho / prod_j z_{rho^(j)}."""
    num = z_order(tuple(sorted(rho, reverse=True)))
    den = math.prod(z_order(p) for p in split_partitions(shape, rho, assignment))
    if num % den:
        raise InvariantViolation(f"non-integral Weyl index {num}/{den} for {shape}, {rho}")
    return num // den


def assignment_classes(shape, rho: Partition) -> dict:
    """Group embeddings by the induced per-factor cycle types.

    Returns ``{rho_split: (number_of_maps, representative_map)}``.  Maps in one
    class are related by the centralizer of w permuting equal-length cycles.
    """
    rho = tuple(sorted(rho, reverse=True))
    out = {}
    for a in assignments(shape, rho):
        key = split_partitions(shape, rho, a)
        cnt, rep = out.get(key, (0, a))
        out[key] = (cnt + 1, rep)
    return out


def irreducible_count(q: int, d: int) -> int:
    """Number of monic irreducible polynomials of degree ``d`` over F_q."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * q ** (d // e)
    return total // d


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def enumerate_types(n: int, restrict_to=None, q: Optional[int] = None, lie: bool = False) -> list[TypeLabel]:
    """Abstract types of GL_n, optionally restricted to those embeddable in some
    T_w with w in W_L (``restrict_to`` a composition of n) and, when ``q`` is
    given, to those realizable over F_q.
    """
    out = set()
    for shape in _shapes(n):
        if restrict_to is not None:
            rhos = levi_cycle_types(restrict_to)
            if not any(delta_membership(shape, rho) is not None for rho in rhos):
                continue
        for lams in itertools.product(*(partitions(m) for _, m in shape)):
            label = TypeLabel(tuple((d, m, lam) for (d, m), lam in zip(shape, lams)))
            if q is None or realizable(label, q, lie):
                out.add(label)
    return sorted(out)


def realizable(label: TypeLabel, q: int, lie: bool = False) -> bool:
    return type_class_count(label, q, lie) > 0


def type_class_count(label: TypeLabel, q: int, lie: bool = False) -> int:
    """Number of GL_n(F_q)-classes (adjoint orbits when ``lie``) of a given type.

    Distinct irreducible factors are chosen for the slots of each degree; slots
    with identical (d, m, lambda) are interchangeable.  In the group case the
    factor x is excluded.
    """
    total = 1
    by_degree: dict[int, list] = {}
    for d, m, lam in label.factors:
        by_degree.setdefault(d, []).append((m, lam))
    for d, slots in by_degree.items():
        avail = irreducible_count(q, d) - (1 if d == 1 and not lie else 0)
        k = len(slots)
        if avail < k:
            return 0
        ways = math.perm(avail, k)
        for mult in Counter(slots).values():
            ways //= math.factorial(mult)
        total *= ways
    return total


def type_centralizer_order(label: TypeLabel, q: int) -> int:
    """|C_{GL_n(F_q)}(g)| for any g of the given type."""
    return math.prod(unipotent_centralizer_order(lam, q**d) for d, m, lam in label.factors)
