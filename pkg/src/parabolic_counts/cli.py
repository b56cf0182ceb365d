"""Command-line interface: ``parabolic-counts {count,verify,porc,green,probe}``.

Exit codes: 0 success, 2 configuration error, 3 budget refusal,
4 identity or engine-agreement failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile

from . import __version__
from .counting import (
    QUANTITIES,
    count,
    lemma_sum_group,
    lemma_sum_lie,
    lemma_sum_nil,
    reports_to_csv,
    select_sign_convention,
    verify_f_identities,
    verify_fourier,
    verify_hc_nilradical,
    verify_regular_decomposition,
    verify_trivial_decomposition_additive,
    verify_trivial_decomposition_group,
    IdentityReport,
)
from .finite_field import prime_power
from .green import GreenBoundError, green_table
from .matrices import (
    BudgetExceeded,
    GroupSpec,
    ParabolicSpec,
    enumerate_parabolic,
    normalizer_of_parabolic,
    semisimple_into_levi,
)
from .porc import MODULUS_CANDIDATES, additive_fiber_probe, fit, minimal_modulus, sweep
from .weyl import compositions, partitions

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_FAILURE = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def parse_group(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*(GL|SL)_?(\d+)\s*", text, re.IGNORECASE)
    if not m:
        raise ConfigError(f"cannot parse group {text!r}; expected e.g. GL2 or SL3")
    n = int(m.group(2))
    if n < 1:
        raise ConfigError("rank must be positive")
    return m.group(1).upper(), n


def parse_qs(text: str) -> list[int]:
    qs = [int(x) for x in text.split(",") if x.strip()]
    if not qs:
        raise ConfigError("empty q list")
    for q in qs:
        try:
            prime_power(q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if len(set(qs)) != len(qs):
        raise ConfigError("q values must be distinct")
    return qs


def parse_composition(text: str, n: int) -> tuple:
    try:
        comp = ParabolicSpec.parse(text).composition
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if sum(comp) != n:
        raise ConfigError(f"composition {text} does not sum to {n}")
    return comp


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def envelope(command: str, config: dict, body) -> dict:
    return {"command": command, "config": config, "config_hash": config_hash(config),
            "versions": {"parabolic_counts": __version__}, "result": body}


def write_output(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")
    os.replace(tmp, path)


def _markdown_counts(reports) -> str:
    lines = ["| group | parabolic | quantity | q | brute | formula | agree |", "|---|---|---|---|---|---|---|"]
    for r in reports:
        lines.append(f"| {r.group} | {r.parabolic} | {r.quantity} | {r.q} | {r.brute} | {r.formula} | {r.agree} |")
    return "\n".join(lines)


# -- commands -----------------------------------------------------------------------------

def cmd_count(args) -> int:
    kind, n = parse_group(args.group)
    qs = parse_qs(args.q)
    comp = parse_composition(args.parabolic, n)
    quantities = QUANTITIES if args.quantity == "all" else (args.quantity,)
    config = {"group": f"{kind}{n}", "q": qs, "parabolic": list(comp), "quantity": list(quantities),
              "engine": args.engine}
    reports = []
    for q in qs:
        group = GroupSpec.make(kind, n, q)
        for quantity in quantities:
            if quantity == "lie":
                try:
                    group.check_lie()
                except ValueError as exc:
                    raise ConfigError(str(exc)) from None
            reports.append(count(quantity, group, ParabolicSpec(comp), args.engine))
    timing = not args.no_timing
    if args.format == "csv":
        text = reports_to_csv(reports)
    elif args.format == "markdown":
        text = _markdown_counts(reports)
    else:
        text = json.dumps(envelope("count", config, [r.to_dict(timing) for r in reports]),
                          indent=2, sort_keys=True)
    write_output(text, args.output)
    return EXIT_FAILURE if any(r.agree is False for r in reports) else EXIT_OK


def verification_suite(kind: str, n: int, q: int) -> list[IdentityReport]:
    """Every identity check applicable to (kind, n, q)."""
    group = GroupSpec.make(kind, n, q)
    group.check_lie()
    out = []
    if kind == "GL":
        out.append(verify_trivial_decomposition_group(n, q))
    select_sign_convention()  # fails loudly if no sign convention calibrates
    for comp in compositions(n):
        par = ParabolicSpec(comp)
        agree = IdentityReport(f"engine agreement and lemma sums, {group}, {par}")
        for quantity, lemma in (("group", lemma_sum_group), ("lie", lemma_sum_lie), ("nil", lemma_sum_nil)):
            rep = count(quantity, group, par, "both")
            agree.checked += 1
            if not rep.agree:
                agree.fail(quantity, rep.brute, rep.formula)
            lem = lemma(group, par)
            if lem != rep.brute:
                agree.fail(f"{quantity} lemma sum", rep.brute, lem)
        out.append(agree)
        structure = IdentityReport(f"normalizers and semisimple parts into the Levi, {group}, {par}")
        P_order = len(enumerate_parabolic(group, par))
        for lie in (False, True):
            structure.checked += 1
            norm = normalizer_of_parabolic(group, par, lie=lie)
            if norm != P_order:
                structure.fail(f"N(P) lie={lie}", P_order, norm)
            checked, failures = semisimple_into_levi(group, par, lie=lie)
            structure.checked += checked
            for x in failures:
                structure.fail(x, "conjugate into L", "none found")
        out.append(structure)
        if kind == "GL":
            out.append(verify_f_identities(group, par, lie=False))
            out.append(verify_f_identities(group, par, lie=True))
            out.append(verify_hc_nilradical(group, par))
            out.append(verify_trivial_decomposition_additive(comp, q))
            out.append(verify_regular_decomposition(comp, q))
    if kind == "GL":
        for rho in partitions(n):
            out.append(verify_fourier(rho, q))
    return out


def cmd_verify(args) -> int:
    kind, n = parse_group(args.group)
    qs = parse_qs(args.q)
    for q in qs:
        try:
            GroupSpec.make(kind, n, q).check_lie()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    config = {"group": f"{kind}{n}", "q": qs}
    results = []
    for q in qs:
        results.extend(verification_suite(kind, n, q))
    if args.format == "markdown":
        lines = ["| identity | checked | ok |", "|---|---|---|"]
        lines += [f"| {r.name} | {r.checked} | {'pass' if r.ok else 'FAIL'} |" for r in results]
        text = "\n".join(lines)
    else:
        text = json.dumps(envelope("verify", config, [r.to_dict() for r in results]), indent=2, sort_keys=True)
    write_output(text, args.output)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILURE


def cmd_porc(args) -> int:
    kind, n = parse_group(args.group)
    qs = parse_qs(args.q)
    if len(qs) < 2:
        raise ConfigError("a PORC sweep needs at least two q values (the largest is held out)")
    comp = parse_composition(args.parabolic, n)
    if args.quantity not in QUANTITIES:
        raise ConfigError(f"quantity must be one of {QUANTITIES}")
    config = {"group": f"{kind}{n}", "q": qs, "parabolic": list(comp), "quantity": args.quantity,
              "degree": args.degree, "modulus": args.modulus, "engine": args.engine}
    series = sweep(args.quantity, kind, n, comp, qs, args.engine)
    degree = args.degree if args.degree is not None else min(n * n, len(qs) - 2)
    if args.modulus is not None:
        result = fit(series, args.modulus, degree)
    else:
        result = minimal_modulus(series, degree) or fit(series, MODULUS_CANDIDATES[0], degree)
    if args.format == "markdown":
        text = result.to_markdown()
    else:
        text = json.dumps(envelope("porc", config, json.loads(result.to_json())), indent=2, sort_keys=True)
    write_output(text, args.output)
    return EXIT_OK if result.consistent else EXIT_FAILURE


def cmd_green(args) -> int:
    table = green_table(args.n, args.bound)
    write_output(table.to_csv(), args.output)
    return EXIT_OK


def cmd_probe(args) -> int:
    kind, n = parse_group(args.group)
    qs = parse_qs(args.q)
    if len(qs) < 3:
        raise ConfigError("a fiber probe needs at least three q values")
    try:
        GroupSpec.make(kind, n, qs[0]).check_lie()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    probes = additive_fiber_probe(kind, n, qs, args.degree)
    config = {"group": f"{kind}{n}", "q": qs, "degree": args.degree}
    body = {"note": "empirical fits of Lie-algebra type fibers; not a proof of PORC",
            "fibers": [p.to_dict() for p in probes]}
    write_output(json.dumps(envelope("probe", config, body), indent=2, sort_keys=True), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parabolic-counts",
                                 description="Parabolic conjugacy-class counts for GL_n/SL_n over F_q.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, q_default=None):
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
        if q_default is not None:
            p.add_argument("--q", default=q_default, help="comma-separated prime powers")

    c = sub.add_parser("count", help="k(P,G), k(p,G) or k(n,G) by brute force and/or formula")
    c.add_argument("--group", required=True)
    c.add_argument("--parabolic", required=True, help="composition, e.g. 1,1")
    c.add_argument("--quantity", choices=QUANTITIES + ("all",), default="group")
    c.add_argument("--engine", choices=("brute", "formula", "both"), default="both")
    c.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    c.add_argument("--no-timing", action="store_true", help="omit timings (byte-reproducible output)")
    common(c, "2")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--group", required=True)
    v.add_argument("--format", choices=("json", "markdown"), default="json")
    common(v, "2")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("porc", help="sweep q and fit per-residue-class polynomials")
    p.add_argument("--group", required=True)
    p.add_argument("--parabolic", required=True)
    p.add_argument("--quantity", default="group")
    p.add_argument("--engine", choices=("brute", "formula", "both"), default="both")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    common(p, "2,3,5,7")
    p.set_defaults(func=cmd_porc)

    g = sub.add_parser("green", help="export the Green polynomial table as CSV")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--bound", type=int, default=None)
    common(g)
    g.set_defaults(func=cmd_green)

    f = sub.add_parser("probe", help="empirical PORC fits of Lie-algebra type fibers")
    f.add_argument("--group", required=True)
    f.add_argument("--degree", type=int, default=None)
    common(f, "2,3,4,5,7")
    f.set_defaults(func=cmd_probe)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (BudgetExceeded, GreenBoundError) as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AssertionError as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
