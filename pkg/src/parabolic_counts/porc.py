"""Sweeps over q and exact per-residue-class polynomial fits (PORC checks).

A quantity is PORC with modulus m when, on each residue class of q mod m,
it agrees with a single polynomial in q.  Fits are exact Lagrange
interpolations; the largest q of a series is always held out and must be
predicted exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .counting import count, type_partition_group, type_partition_lie
from .finite_field import prime_power
from .matrices import GroupSpec, ParabolicSpec
from .qpoly import QPolynomial, lagrange_interpolate

MODULUS_CANDIDATES = (1, 2, 6)


@dataclass(frozen=True)
class SweepSeries:
    quantity: str
    kind: str
    n: int
    composition: tuple
    points: tuple  # ((q, value), ...)

    def __post_init__(self):
        qs = [q for q, _ in self.points]
        if len(set(qs)) != len(qs):
            raise ValueError("sweep q values must be distinct")
        for q in qs:
            prime_power(q)
        object.__setattr__(self, "points", tuple(sorted(self.points)))


@dataclass
class ClassFit:
    residue: int
    poly: Optional[QPolynomial]
    status: str  # "fit", "insufficient data", "not polynomial on this class"
    trained_on: list = field(default_factory=list)
    verified_at: list = field(default_factory=list)
    failed_at: list = field(default_factory=list)


@dataclass
class PorcFit:
    series: SweepSeries
    modulus: int
    degree_bound: int
    held_out: int
    classes: list

    @property
    def consistent(self) -> bool:
        held = [c for c in self.classes if self.held_out in c.verified_at + c.failed_at]
        return bool(held) and all(c.status == "fit" and not c.failed_at for c in self.classes)

    def poly_for(self, q: int) -> Optional[QPolynomial]:
        for c in self.classes:
            if c.residue == q % self.modulus:
                return c.poly
        return None

    def to_records(self) -> list[dict]:
        return [{"class": c.residue, "modulus": self.modulus,
                 "poly": str(c.poly) if c.poly is not None else None,
                 "status": c.status, "trained_on": c.trained_on,
                 "verified_at": c.verified_at, "failed_at": c.failed_at}
                for c in self.classes]

    def to_json(self) -> str:
        s = self.series
        return json.dumps({"quantity": s.quantity, "group": f"{s.kind}{s.n}",
                           "parabolic": ",".join(map(str, s.composition)),
                           "points": [list(p) for p in s.points], "held_out": self.held_out,
                           "degree_bound": self.degree_bound, "porc_consistent": self.consistent,
                           "fits": self.to_records()}, indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        s = self.series
        lines = [f"**{s.quantity}** for {s.kind}{s.n}, parabolic {','.join(map(str, s.composition))}: "
                 f"modulus {self.modulus}, held out q = {self.held_out}, "
                 f"{'PORC-consistent' if self.consistent else 'not confirmed'}", "",
                 "| class | polynomial | status | trained on | verified at |",
                 "|---|---|---|---|---|"]
        for c in self.classes:
            lines.append(f"| {c.residue} mod {self.modulus} | {c.poly if c.poly is not None else '-'} | "
                         f"{c.status} | {c.trained_on} | {c.verified_at} |")
        return "\n".join(lines)


def fit(series: SweepSeries, modulus: int, degree_bound: Optional[int] = None) -> PorcFit:
    """Fit one polynomial per residue class of q mod ``modulus``.

    Each class interpolates its lowest ``degree_bound + 1`` training points
    and must reproduce every other point of the class, including the held-out
    (largest) q when it falls in the class.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if len(series.points) < 2:
        raise ValueError("a series needs at least two points (one is held out)")
    d = series.n * series.n if degree_bound is None else degree_bound
    held_q = series.points[-1][0]
    classes = []
    for r in range(modulus):
        pts = [(q, v) for q, v in series.points if q % modulus == r]
        train = [(q, v) for q, v in pts if q != held_q]
        if len(train) < d + 1:
            classes.append(ClassFit(r, None, "insufficient data", [q for q, _ in train]))
            continue
        base = train[: d + 1]
        poly = lagrange_interpolate([q for q, _ in base], [v for _, v in base])
        cf = ClassFit(r, poly, "fit", [q for q, _ in base])
        for q, v in pts:
            if (q, v) not in base:
                (cf.verified_at if poly(q) == v else cf.failed_at).append(q)
        if any(q != held_q for q in cf.failed_at):
            cf.status = "not polynomial on this class"
        classes.append(cf)
    return PorcFit(series, modulus, d, held_q, classes)


def minimal_modulus(series: SweepSeries, degree_bound: Optional[int] = None,
                    candidates=MODULUS_CANDIDATES) -> Optional[PorcFit]:
    """The fit for the smallest candidate modulus that is PORC-consistent, if any."""
    for m in candidates:
        f = fit(series, m, degree_bound)
        if f.consistent:
            return f
    return None


def refinement_consistent(coarse: PorcFit, fine: PorcFit) -> bool:
    """Fits on classes mod a multiple of the modulus agree with the coarse fits."""
    if fine.modulus % coarse.modulus:
        raise ValueError("fine modulus must be a multiple of the coarse one")
    for c in fine.classes:
        if c.poly is None:
            continue
        parent = coarse.classes[c.residue % coarse.modulus].poly
        if parent is not None and parent != c.poly:
            return False
    return True


def sweep(quantity: str, kind: str, n: int, composition, qs, engine: str = "both") -> SweepSeries:
    """Evaluate a counting quantity at each q; with both engines they must agree."""
    par = ParabolicSpec(tuple(composition))
    points = []
    for q in qs:
        rep = count(quantity, GroupSpec.make(kind, n, q), par, engine)
        if rep.agree is False:
            raise ValueError(f"engines disagree at q = {q}: brute {rep.brute}, formula {rep.formula}")
        points.append((q, rep.value))
    return SweepSeries(quantity, kind, n, tuple(composition), tuple(points))


@dataclass
class FiberProbe:
    label: str
    measure: str  # "elements" or "classes"
    points: list
    fit: Optional[PorcFit]

    def to_dict(self):
        return {"type": self.label, "measure": self.measure, "points": self.points,
                "porc_consistent": bool(self.fit and self.fit.consistent),
                "modulus": self.fit.modulus if self.fit else None,
                "polys": [r["poly"] for r in self.fit.to_records()] if self.fit else None}


def additive_fiber_probe(kind: str, n: int, qs, degree_bound: Optional[int] = None) -> list[FiberProbe]:
    """Fit Lie-algebra type fibers (element counts and orbit counts) across q.

    Empirical evidence only: PORC of these fibers is not known in general.
    """
    data: dict = {}
    for q in sorted(qs):
        for fib in type_partition_lie(GroupSpec.make(kind, n, q)):
            data.setdefault(str(fib.label), {})[q] = (fib.size, fib.classes)
    d = min(n * n, len(qs) - 2) if degree_bound is None else degree_bound
    out = []
    for label in sorted(data):
        for idx, measure in enumerate(("elements", "classes")):
            pts = tuple((q, data[label].get(q, (0, 0))[idx]) for q in sorted(qs))
            series = SweepSeries(f"fiber {measure}", kind, n, (n,), pts)
            out.append(FiberProbe(label, measure, [list(p) for p in pts], minimal_modulus(series, d)))
    return out


def group_fiber_points(kind: str, n: int, qs) -> dict:
    data: dict = {}
    for q in sorted(qs):
        for fib in type_partition_group(GroupSpec.make(kind, n, q)):
            data.setdefault(str(fib.label), {})[q] = fib.classes
    return data
