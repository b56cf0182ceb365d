"""Class counts under parabolic actions, each computed by brute force and by formula.

Quantities:

* ``group``: k(P^F, G^F), the number of P^F-conjugacy classes in G^F.
* ``lie``: k(p^F, G^F) = |P^F|^{-1} #{(g, x) in G^F x p^F : Ad_g x = x}.
* ``nil``: k(n^F, G^F), the nilradical analogue.

The formula engines sum, over types, the number of classes of that type
times an average of Deligne-Lusztig values over the Levi Weyl group.  The
Lie-algebra induction of a function on a twisted torus is evaluated by the
character formula: for x with Jordan parts x_s + x_n,

    R(f)(x) = sum_{t in t_w^F, t ~ x_s} f(t) Q^{C(x_s)}_{T(t)}(1 + x_n),

where T(t) is the torus of C(x_s) determined by how t sits in t_w.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .finite_field import CyclotomicInt, Field, additive_char_code
from .green import dl_value, green_value
from .matrices import (
    GroupSpec,
    MatrixAlgebra,
    ParabolicSpec,
    algebra,
    block_diagonal,
    centralizer_order,
    class_data,
    coset_transversal,
    enumerate_group,
    enumerate_levi,
    enumerate_lie,
    enumerate_lie_levi,
    enumerate_lie_parabolic,
    enumerate_nilradical,
    enumerate_parabolic,
    enumerate_unipotent_radical,
    f_nilradical_lie,
    f_parabolic_group,
    f_parabolic_lie,
    in_pattern,
    jordan_add,
    jordan_normal_form,
    levi_projection,
    orbit_representatives,
    torus_lie_blocks,
    _factor_cached,
)
from .weyl import (
    InvariantViolation,
    TypeLabel,
    enumerate_types,
    gl_order,
    gl_order_pprime,
    levi_block_cycle_types,
    levi_cycle_types,
    lie_torus_order,
    relative_ranks,
    torus_order,
    torus_rank,
    weyl_levi_order,
)

QUANTITIES = ("group", "lie", "nil")
ENGINES = ("brute", "formula", "both")


# -- type census ---------------------------------------------------------------------

@dataclass(frozen=True)
class TypeFiber:
    """Elements and G^F-classes (adjoint orbits for the Lie algebra) of one type."""

    label: TypeLabel
    size: int
    classes: int


@functools.lru_cache(maxsize=None)
def _census(group: GroupSpec, lie: bool):
    M = algebra(group)
    ambient = enumerate_lie(group) if lie else enumerate_group(group)
    sizes: Counter = Counter()
    keys: dict = {}
    for x in ambient:
        key, label = class_data(M, x)
        sizes[label] += 1
        keys.setdefault(label, set()).add(key)
    if group.kind == "GL":
        classes = {lab: len(k) for lab, k in keys.items()}
    else:
        classes = Counter(class_data(M, r)[1] for r in orbit_representatives(ambient, group))
    fibers = [TypeFiber(lab, sizes[lab], classes[lab]) for lab in sorted(sizes)]
    if sum(f.size for f in fibers) != len(ambient):
        raise InvariantViolation("type fibers do not partition the ambient set")
    return tuple(fibers)


def type_partition_group(group: GroupSpec) -> list[TypeFiber]:
    return list(_census(group, False))


def type_partition_lie(group: GroupSpec) -> list[TypeFiber]:
    group.check_lie()
    return list(_census(group, True))


# -- Deligne-Lusztig averages ----------------------------------------------------------

def levi_average(label: TypeLabel, composition, q: int) -> Fraction:
    """(1/|W_L|) sum_{w in W_L} R_{T_w}^G(1) at an element of type ``label``."""
    total = sum(cnt * dl_value(rho, label, q) for rho, cnt in levi_cycle_types(composition).items())
    return Fraction(total, weyl_levi_order(composition))


@functools.lru_cache(maxsize=None)
def _block_class(field: Field, block: tuple):
    r = math.isqrt(len(block))
    fac = _factor_cached(field, MatrixAlgebra(field, r).charpoly(block).coeffs)
    if len(fac) != 1:
        raise InvariantViolation("torus block is not isotypic")
    (g, mult), = fac
    return g.coeffs, g.degree, mult


def dl_induction_lie(group: GroupSpec, rho, f: Callable, x, class_info=None):
    """R_{t_w}^g(f)(x) by the character formula (torus sum), for f on t_w^F.

    ``rho`` lists the cycle lengths of w, and the torus is realized as in
    :func:`torus_lie_blocks`.  Values of ``f`` may be ints, Fractions or
    :class:`CyclotomicInt`.
    """
    F, q = group.field, group.q
    if class_info is None:
        class_info = class_data(algebra(group), x)
    key, _ = class_info
    want = {coeffs: (len(coeffs) - 1, sum(lam), lam) for coeffs, lam in key}
    n = group.n
    total = 0
    for blocks in torus_lie_blocks(F, rho):
        parts: dict = {}
        ok = True
        for blk in blocks:
            coeffs, d, mult = _block_class(F, blk)
            if coeffs not in want:
                ok = False
                break
            parts.setdefault(coeffs, []).append(mult)
        if not ok or any(sum(parts.get(c, ())) != m for c, (d, m, lam) in want.items()):
            continue
        value = f(block_diagonal(blocks, n))
        if value == 0:
            continue
        qv = 1
        for c, (d, m, lam) in want.items():
            qv *= green_value(lam, tuple(sorted(parts[c], reverse=True)), q**d)
        total = total + value * qv
    return total


def one(_):
    return 1


def levi_blocks(x, par: ParabolicSpec):
    n = par.n
    out = []
    for a, b in par.blocks():
        out.append(tuple(x[i * n + j] for i in range(a, b) for j in range(a, b)))
    return out


def levi_dl_induction(q: int, par: ParabolicSpec, block_rhos, fs, x):
    """R_{t_w}^l(f)(x) for l = prod gl_{n_i}, a product over blocks."""
    out = 1
    for (a, b), rho, f, xb in zip(par.blocks(), block_rhos, fs, levi_blocks(x, par)):
        out = out * dl_induction_lie(GroupSpec.make("GL", b - a, q), rho, f, xb)
    return out


# -- Harish-Chandra induction -------------------------------------------------------

def hc_induction_lie(group: GroupSpec, par: ParabolicSpec, f: Callable, x, invariant: bool = True):
    """(R_l^g f)(x) = |P^F|^{-1} sum_{g : Ad_{g^-1} x in p} f(pi_p(Ad_{g^-1} x)).

    With ``invariant`` (f constant on L^F-orbits) the sum runs over a coset
    transversal of G^F/P^F; otherwise over all of G^F.
    """
    M = algebra(group)
    n = group.n
    if invariant:
        total = 0
        for g, gi in coset_transversal(group, par):
            y = M.mul(M.mul(gi, x), g)
            if in_pattern(y, n, par.in_parabolic):
                total = total + f(levi_projection(y, par))
        return total
    total = 0
    for g in enumerate_group(group):
        y = M.conj(M.inverse(g), x, g)
        if in_pattern(y, n, par.in_parabolic):
            total = total + f(levi_projection(y, par))
    return Fraction(total, len(enumerate_parabolic(group, par)))


# -- reports --------------------------------------------------------------------------

CSV_COLUMNS = ("group", "parabolic", "quantity", "q", "brute", "formula", "agree", "ms_brute", "ms_formula")


@dataclass
class CountReport:
    group: str
    parabolic: str
    quantity: str
    q: int
    brute: Optional[int] = None
    formula: Optional[int] = None
    ms_brute: Optional[float] = None
    ms_formula: Optional[float] = None
    breakdown: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def agree(self) -> Optional[bool]:
        if self.brute is None or self.formula is None:
            return None
        return self.brute == self.formula

    @property
    def value(self) -> int:
        return self.brute if self.brute is not None else self.formula

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["agree"] = self.agree
        if not timing:
            d.pop("ms_brute")
            d.pop("ms_formula")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def breakdown_json(self) -> str:
        return json.dumps(self.breakdown, indent=2, sort_keys=True)

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[c] for c in CSV_COLUMNS]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, round((time.perf_counter() - t0) * 1000, 3)


def _exact(total, denom, what):
    if total % denom:
        raise InvariantViolation(f"non-integral {what}: {total}/{denom}")
    return total // denom


def _check_engine(engine):
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")


# -- k(P^F, G^F) ------------------------------------------------------------------------

def k_group_brute(group: GroupSpec, par: ParabolicSpec) -> int:
    P = enumerate_parabolic(group, par)
    return _exact(sum(centralizer_order(group, p) for p in P), len(P), "Burnside count")


def _type_sum(fibers, composition, q):
    restricted = set(enumerate_types(sum(composition), restrict_to=composition))
    total = Fraction(0)
    rows = []
    for fib in fibers:
        avg = levi_average(fib.label, composition, q)
        if avg.denominator != 1:
            raise InvariantViolation(f"non-integral W_L-average {avg} at {fib.label}")
        if fib.label not in restricted:
            if avg:
                raise InvariantViolation(f"type {fib.label} outside Xi_L has nonzero value")
            continue
        total += fib.classes * avg
        rows.append({"type": str(fib.label), "fiber_elements": fib.size,
                     "fiber_classes": fib.classes, "w_average": int(avg)})
    return int(total), rows


def k_group_formula(group: GroupSpec, par: ParabolicSpec):
    par.check(group.n)
    return _type_sum(type_partition_group(group), par.composition, group.q)


def k_group(group: GroupSpec, par: ParabolicSpec, engine: str = "both") -> CountReport:
    _check_engine(engine)
    rep = CountReport(str(group), str(par), "group", group.q)
    if engine in ("brute", "both"):
        rep.brute, rep.ms_brute = _timed(lambda: k_group_brute(group, par))
    if engine in ("formula", "both"):
        (rep.formula, rep.breakdown), rep.ms_formula = _timed(lambda: k_group_formula(group, par))
    return rep


# -- k(p^F, G^F) -------------------------------------------------------------------------

def k_lie_brute(group: GroupSpec, par: ParabolicSpec) -> int:
    group.check_lie()
    p = enumerate_lie_parabolic(group, par)
    P = enumerate_parabolic(group, par)
    return _exact(sum(centralizer_order(group, x) for x in p), len(P), "Burnside count")


def k_lie_formula(group: GroupSpec, par: ParabolicSpec):
    group.check_lie()
    par.check(group.n)
    return _type_sum(type_partition_lie(group), par.composition, group.q)


def k_lie(group: GroupSpec, par: ParabolicSpec, engine: str = "both") -> CountReport:
    _check_engine(engine)
    rep = CountReport(str(group), str(par), "lie", group.q)
    if engine in ("brute", "both"):
        rep.brute, rep.ms_brute = _timed(lambda: k_lie_brute(group, par))
    if engine in ("formula", "both"):
        (rep.formula, rep.breakdown), rep.ms_formula = _timed(lambda: k_lie_formula(group, par))
    return rep


# -- k(n^F, G^F) -------------------------------------------------------------------------

SIGN_CANDIDATES = ("product", "sum", "torus")


def nil_sign(candidate: str, kind: str, n: int, composition, rho) -> int:
    """Sign attached to w (cycle type ``rho``) in the nilradical formula.

    ``product`` and ``sum`` read the exponent as eps_G * eps_L and
    eps_G + eps_L.  ``torus`` uses eps_L + eps_{T_w}, the sign of
    dim R_{T_w}^L(1).
    """
    eg, el = relative_ranks(kind, n, composition)
    if candidate == "product":
        return (-1) ** (eg * el)
    if candidate == "sum":
        return (-1) ** (eg + el)
    if candidate == "torus":
        return (-1) ** (el + torus_rank(kind, rho))
    raise ValueError(f"unknown sign candidate {candidate!r}")


def levi_order_pprime(group: GroupSpec, composition) -> int:
    o = math.prod(gl_order_pprime(k, group.q) for k in composition)
    return o if group.kind == "GL" else o // (group.q - 1)


def k_nil_brute(group: GroupSpec, par: ParabolicSpec) -> int:
    """|U^F|^{-1} sum_{x in n^F} |C_{G^F}(x)| (equivalently |L^F| sum_R f_n)."""
    nil = enumerate_nilradical(group, par)
    U = enumerate_unipotent_radical(group, par)
    return _exact(sum(centralizer_order(group, x) for x in nil), len(U), "nilradical count")


def nilradical_representatives(group: GroupSpec, par: ParabolicSpec) -> list:
    """R(n^F, g^F): one representative per adjoint orbit meeting n^F.

    For GL_n these are the Jordan normal forms of the Jordan types found in
    n^F; for SL_n the orbits are found by brute force.
    """
    M = algebra(group)
    nil = enumerate_nilradical(group, par)
    if group.kind == "GL":
        keys = sorted({class_data(M, x)[0] for x in nil})
        return [jordan_normal_form(group, k) for k in keys]
    nilpotents = [x for x in enumerate_lie(group) if M.is_nilpotent(x)]
    return orbit_representatives(nilpotents, group, meeting=nil)


def k_nil_formula(group: GroupSpec, par: ParabolicSpec, sign: str = "torus"):
    par.check(group.n)
    M = algebra(group)
    comp = par.composition
    reps = nilradical_representatives(group, par)
    lams = [class_data(M, r)[1].factors[0][2] for r in reps]
    total = 0
    rows = []
    for rho, cnt in sorted(levi_cycle_types(comp).items()):
        s = nil_sign(sign, group.kind, group.n, comp, rho)
        inner = sum(green_value(lam, rho, group.q) for lam in lams)
        total += cnt * s * inner
        rows.append({"cycle_type": list(rho), "count": cnt, "sign": s, "green_sum": inner})
    value = Fraction(levi_order_pprime(group, comp) * total, weyl_levi_order(comp))
    if value.denominator != 1:
        raise InvariantViolation(f"non-integral nilradical formula {value}")
    return int(value), rows, [list(lam) for lam in lams]


def k_nil_fourier(group: GroupSpec, par: ParabolicSpec, sign: str = "torus") -> int:
    """The Fourier-side form: sum over R, w, y of R_{t_w}^g(F(delta_y))(x) / |t_w^F|.

    Evaluated exactly in Z[zeta_p]; the result must be a rational integer.
    """
    F = group.field
    M = algebra(group)
    comp = par.composition
    total = Fraction(0)
    for x in nilradical_representatives(group, par):
        info = class_data(M, x)
        for rho, cnt in levi_cycle_types(comp).items():
            s = nil_sign(sign, group.kind, group.n, comp, rho)
            acc = CyclotomicInt.from_int(F.p, 0)
            for yb in torus_lie_blocks(F, rho):
                y = block_diagonal(yb, group.n)
                acc = acc + dl_induction_lie(group, rho, lambda t: additive_char_code(F, M.trace(M.mul(t, y))),
                                             x, info)
            total += Fraction(cnt * s * int(acc), lie_torus_order(rho, group.q))
    value = total * levi_order_pprime(group, comp) / weyl_levi_order(comp)
    if value.denominator != 1:
        raise InvariantViolation(f"non-integral Fourier-side count {value}")
    return int(value)


@functools.lru_cache(maxsize=None)
def select_sign_convention(calibration=(("GL", 2, 2), ("GL", 3, 2), ("GL", 2, 3))) -> tuple:
    """Calibrate the nilradical sign against brute force on every composition.

    Returns ``(winner, {candidate: [cells where it fails]})``; raises when no
    candidate matches everywhere.
    """
    from .weyl import compositions

    failures = {c: [] for c in SIGN_CANDIDATES}
    for kind, n, q in calibration:
        group = GroupSpec.make(kind, n, q)
        for comp in compositions(n):
            par = ParabolicSpec(comp)
            brute = k_nil_brute(group, par)
            for cand in SIGN_CANDIDATES:
                if k_nil_formula(group, par, cand)[0] != brute:
                    failures[cand].append(f"{group} {par}")
    winners = [c for c in SIGN_CANDIDATES if not failures[c]]
    if not winners:
        raise InvariantViolation(f"no sign convention matches brute force: {failures}")
    return winners[0], {c: tuple(v) for c, v in failures.items()}


def k_nil(group: GroupSpec, par: ParabolicSpec, engine: str = "both", sign: Optional[str] = None) -> CountReport:
    _check_engine(engine)
    rep = CountReport(str(group), str(par), "nil", group.q)
    if engine in ("brute", "both"):
        rep.brute, rep.ms_brute = _timed(lambda: k_nil_brute(group, par))
    if engine in ("formula", "both"):
        if sign is None:
            sign = select_sign_convention()[0]
        (value, rows, lams), rep.ms_formula = _timed(lambda: k_nil_formula(group, par, sign))
        rep.formula = value
        rep.breakdown = rows
        rep.extra = {"sign_convention": sign, "nilpotent_types": lams}
    return rep


def count(quantity: str, group: GroupSpec, par: ParabolicSpec, engine: str = "both") -> CountReport:
    if quantity == "group":
        return k_group(group, par, engine)
    if quantity == "lie":
        return k_lie(group, par, engine)
    if quantity == "nil":
        return k_nil(group, par, engine)
    raise ValueError(f"quantity must be one of {QUANTITIES}")


# -- lemma-level sums ---------------------------------------------------------------------

def lemma_sum_group(group: GroupSpec, par: ParabolicSpec) -> int:
    """sum over R(P^F, G^F) of f_{P^F}^{G^F}."""
    reps = orbit_representatives(enumerate_group(group), group, meeting=enumerate_parabolic(group, par))
    return sum(f_parabolic_group(group, r, par) for r in reps)


def lemma_sum_lie(group: GroupSpec, par: ParabolicSpec) -> int:
    reps = orbit_representatives(enumerate_lie(group), group, meeting=enumerate_lie_parabolic(group, par))
    return sum(f_parabolic_lie(group, r, par) for r in reps)


def lemma_sum_nil(group: GroupSpec, par: ParabolicSpec) -> int:
    """|L^F| sum over R(n^F, g^F) of f_n."""
    reps = nilradical_representatives(group, par)
    return len(enumerate_levi(group, par)) * sum(f_nilradical_lie(group, r, par) for r in reps)


# -- identity verifiers -------------------------------------------------------------------

@dataclass
class IdentityReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, witness, expected, got):
        self.failures.append({"witness": str(witness), "expected": str(expected), "got": str(got)})

    def to_dict(self):
        return {"name": self.name, "checked": self.checked, "ok": self.ok, "failures": self.failures[:10]}


def _class_reps(group: GroupSpec, lie: bool):
    """One element per GL_n(F_q)-class (first in enumeration order), with its class data."""
    M = algebra(group)
    seen = {}
    for x in (enumerate_lie(group) if lie else enumerate_group(group)):
        cd = class_data(M, x)
        seen.setdefault(cd[0], (x, cd))
    return list(seen.values())


def verify_trivial_decomposition_group(n: int, q: int) -> IdentityReport:
    """(1/n!) sum_w R_{T_w}(1) = 1 on every class of GL_n(F_q)."""
    group = GroupSpec.make("GL", n, q)
    rep = IdentityReport(f"trivial decomposition, {group}")
    for x, (_, label) in _class_reps(group, False):
        avg = levi_average(label, (n,), q)
        rep.checked += 1
        if avg != 1:
            rep.fail(label, 1, avg)
    return rep


def verify_f_identities(group: GroupSpec, par: ParabolicSpec, lie: bool = False) -> IdentityReport:
    """f_P = (1/|W_L|) sum_w R_{T_w}(1) on every class (group) or adjoint class (lie).

    In the Lie case the right side uses the torus-sum induction rather than
    the Weyl-index closed form, and both are compared.
    """
    name = "f_p = W_L-average of R_t(1)" if lie else "f_P = W_L-average of R_T(1)"
    rep = IdentityReport(f"{name}, {group}, {par}")
    comp = par.composition
    cycle_types = levi_cycle_types(comp)
    for x, (key, label) in _class_reps(group, lie):
        rep.checked += 1
        if lie:
            brute = f_parabolic_lie(group, x, par)
            total = sum(cnt * dl_induction_lie(group, rho, one, x, (key, label))
                        for rho, cnt in cycle_types.items())
            formula = Fraction(total, weyl_levi_order(comp))
            closed = levi_average(label, comp, group.q)
            if closed != formula:
                rep.fail(f"{label} (torus sum vs closed form)", closed, formula)
        else:
            brute = f_parabolic_group(group, x, par)
            formula = levi_average(label, comp, group.q)
        if brute != formula:
            rep.fail(label, brute, formula)
    return rep


def verify_trivial_decomposition_additive(composition, q: int) -> IdentityReport:
    """(1/|W_L|) sum_w R_{t_w}^l(1)(x) = 1 for every x in l^F.

    Split blocks (w = 1 there) are evaluated by Harish-Chandra coset sums
    from the diagonal torus; twisted blocks by the torus-sum formula.
    """
    par = ParabolicSpec(tuple(composition))
    n = par.n
    group = GroupSpec.make("GL", n, q)
    rep = IdentityReport(f"additive trivial decomposition, l = {'x'.join(f'gl{k}' for k in composition)}, q = {q}")
    wl = weyl_levi_order(composition)
    block_groups = [GroupSpec.make("GL", k, q) for k in composition]
    borels = [ParabolicSpec((1,) * k) for k in composition]
    cache = {}
    for x in enumerate_lie_levi(group, par):
        total = 0
        for rhos, cnt in levi_block_cycle_types(composition):
            term = 1
            for G, B, rho, xb in zip(block_groups, borels, rhos, levi_blocks(x, par)):
                key = (G, rho, xb)
                if key not in cache:
                    if all(r == 1 for r in rho):
                        cache[key] = hc_induction_lie(G, B, one, xb)
                    else:
                        cache[key] = dl_induction_lie(G, rho, one, xb)
                term *= cache[key]
            total += cnt * term
        rep.checked += 1
        if Fraction(total, wl) != 1:
            rep.fail(x, 1, Fraction(total, wl))
    return rep


def fourier_transform_torus(field: Field, rho, f: Callable, kind: str = "GL") -> dict:
    """(Ff)(x) = sum_z mu(tr(x z)) f(z) on t_w^F, valued in Z[zeta_p]."""
    n = sum(rho)
    if kind == "SL" and n % field.p == 0:
        raise ValueError("κ degenerate: p | n")
    M = MatrixAlgebra(field, n)
    pts = [block_diagonal(b, n) for b in torus_lie_blocks(field, rho)]
    zero = CyclotomicInt.from_int(field.p, 0)
    out = {}
    for x in pts:
        acc = zero
        for z in pts:
            v = f(z)
            if v != 0:
                acc = acc + additive_char_code(field, M.trace(M.mul(x, z))) * v
        out[x] = acc
    return out


def delta_at(y):
    return lambda z: 1 if z == y else 0


def verify_fourier(rho, q: int) -> IdentityReport:
    """chi_t = sum_y F(delta_y) and sum_z mu(kappa(x, z)) = |t| delta_0, exactly."""
    from .finite_field import gf

    F = gf(q)
    n = sum(rho)
    rep = IdentityReport(f"Fourier identities on t_w, rho = {list(rho)}, q = {q}")
    pts = [block_diagonal(b, n) for b in torus_lie_blocks(F, rho)]
    size = len(pts)
    zero = (0,) * (n * n)
    M = MatrixAlgebra(F, n)
    total = {x: CyclotomicInt.from_int(F.p, 0) for x in pts}
    for y in pts:
        for x, v in fourier_transform_torus(F, rho, delta_at(y)).items():
            total[x] = total[x] + v
    for x in pts:
        chi = size if x == zero else 0
        direct = CyclotomicInt.from_int(F.p, 0)
        for z in pts:
            direct = direct + additive_char_code(F, M.trace(M.mul(x, z)))
        rep.checked += 1
        if total[x] != chi:
            rep.fail(x, chi, total[x])
        if direct != chi:
            rep.fail(f"{x} (character sum)", chi, direct)
    delta0 = fourier_transform_torus(F, rho, delta_at(zero))
    if any(v != 1 for v in delta0.values()):
        rep.fail("F(delta_0)", 1, delta0)
    return rep


def verify_regular_decomposition(composition, q: int) -> IdentityReport:
    """Both sides of chi_l = |l|/(|W_L||L|) sum_w R_t(1)(0) |T_w|/|t_w| R_t(chi_t), pointwise on l^F.

    The right side also re-expands chi_t as sum_y F(delta_y) in Z[zeta_p],
    and the Fourier identities are checked on each torus of the Levi.
    """
    par = ParabolicSpec(tuple(composition))
    n = par.n
    group = GroupSpec.make("GL", n, q)
    F = group.field
    rep = IdentityReport(f"regular decomposition, l = {'x'.join(f'gl{k}' for k in composition)}, q = {q}")
    l_size = q ** sum(k * k for k in composition)
    L_order = math.prod(gl_order(k, q) for k in composition)
    wl = weyl_levi_order(composition)
    zero_n = (0,) * (n * n)
    block_groups = [GroupSpec.make("GL", k, q) for k in composition]
    w_data = []
    for rhos, cnt in levi_block_cycle_types(composition):
        rho_all = tuple(sorted((r for rho in rhos for r in rho), reverse=True))
        at_zero = math.prod(dl_induction_lie(G, rho, one, (0,) * (G.n ** 2))
                            for G, rho in zip(block_groups, rhos))
        w_data.append((rhos, cnt, at_zero, Fraction(torus_order(rho_all, q), lie_torus_order(rho_all, q))))
    for rho in sorted({tuple(sorted((r for rho in rhos for r in rho), reverse=True)) for rhos, *_ in w_data}):
        sub = verify_fourier(rho, q)
        rep.checked += sub.checked
        rep.failures.extend(sub.failures)
    chi_cache = {}
    for x in enumerate_lie_levi(group, par):
        rhs = Fraction(0)
        rhs_fourier = Fraction(0)
        for rhos, cnt, at_zero, ratio in w_data:
            val = 1
            val_f = 1
            for G, rho, xb in zip(block_groups, rhos, levi_blocks(x, par)):
                key = (G, rho, xb)
                if key not in chi_cache:
                    t_size = lie_torus_order(rho, q)
                    zb = (0,) * (G.n ** 2)
                    chi = dl_induction_lie(G, rho, lambda t: t_size if t == zb else 0, xb)
                    fou = _fourier_chi_induction(G, rho, xb)
                    chi_cache[key] = (chi, fou)
                chi, fou = chi_cache[key]
                val *= chi
                val_f *= fou
            rhs += cnt * at_zero * ratio * val
            rhs_fourier += cnt * at_zero * ratio * val_f
        rhs = rhs * l_size / (wl * L_order)
        rhs_fourier = rhs_fourier * l_size / (wl * L_order)
        lhs = l_size if x == zero_n else 0
        rep.checked += 1
        if rhs != lhs:
            rep.fail(x, lhs, rhs)
        if rhs_fourier != lhs:
            rep.fail(f"{x} (Fourier side)", lhs, rhs_fourier)
    return rep


def _fourier_chi_induction(G: GroupSpec, rho, x) -> int:
    """R_t(sum_y F(delta_y))(x), computed in Z[zeta_p] and returned as an integer."""
    F = G.field
    M = algebra(G)
    acc = CyclotomicInt.from_int(F.p, 0)
    info = class_data(M, x)
    for yb in torus_lie_blocks(F, rho):
        y = block_diagonal(yb, G.n)
        acc = acc + dl_induction_lie(G, rho, lambda t: additive_char_code(F, M.trace(M.mul(t, y))), x, info)
    return int(acc)


def verify_hc_nilradical(group: GroupSpec, par: ParabolicSpec) -> IdentityReport:
    """R_l^g(chi_l) = |l^F| f_n pointwise on g^F, and R_l^g(1) = f_p."""
    rep = IdentityReport(f"Harish-Chandra induction identities, {group}, {par}")
    l_size = len(enumerate_lie_levi(group, par))
    zero = (0,) * (group.n ** 2)
    chi_l = lambda y: l_size if y == zero else 0
    for x, _ in _class_reps(group, True):
        rep.checked += 1
        a = hc_induction_lie(group, par, chi_l, x)
        b = l_size * f_nilradical_lie(group, x, par)
        if a != b:
            rep.fail(x, b, a)
        c = hc_induction_lie(group, par, one, x)
        d = f_parabolic_lie(group, x, par)
        if c != d:
            rep.fail(f"{x} (R(1) vs f_p)", d, c)
    return rep
