"""Batch front end: parse a family spec, run the analyses, print a report.

    arborrep analyze --spec ggs.json --depth 3 --json report.json
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import click

from . import chartab, perm, transitivity, zeta
from .automata import Automaton, materialize
from .families import (DefiningVector, FamilyError, RING_KINDS, dihedral_build,
                       full_symmetric_wreath, ggs_build, ggs_is_aperiodic, ggs_is_centered,
                       ggs_prediction, gl_build, regular_s3_generators, wreath_build)
from .group import TreeGroup
from .modp import is_prime
from .scheme import SchemeError
from .tree import MAX_DEPTH, CapacityError, TreeError, TreeShape, spine

SCHEMA_VERSION = 1
CHECKS = ("transitivity", "gelfand", "decompose", "zeta", "order")
FAMILIES = ("ggs", "iterated_wreath", "dihedral_binary", "gl_congruence", "automaton")
DEFAULT_CAP_LEVEL = 4000   # pair tables hold |L_n|^2 cells

EXIT_SPEC = 2
EXIT_CAPACITY = 3


class SpecError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass
class GroupSpec:
    family: str
    params: dict[str, Any]
    depth: int | None = None
    checks: tuple[str, ...] | None = None
    caps: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"family": self.family, **self.params}
        if self.depth is not None:
            out["depth"] = self.depth
        return out


# -- spec parsing -------------------------------------------------------------


def _get(obj: Mapping, key: str, kind, path: str, default=...):
    if key not in obj:
        if default is ...:
            raise SpecError(f"{path}.{key}", "required field is missing")
        return default
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SpecError(f"{path}.{key}", f"expected an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise SpecError(f"{path}.{key}", f"expected {kind.__name__}, got {val!r}")
    return val


def _perm_list(raw, path: str) -> list[list[int]]:
    if not isinstance(raw, list) or not raw:
        raise SpecError(path, "expected a non-empty list of permutations")
    out = []
    for i, g in enumerate(raw):
        if not isinstance(g, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in g):
            raise SpecError(f"{path}[{i}]", "expected a list of integers")
        if sorted(g) != list(range(len(g))):
            raise SpecError(f"{path}[{i}]", f"not a permutation of 0..{len(g) - 1}")
        out.append(list(g))
    return out


def _parse_family(data: Mapping, family: str) -> dict[str, Any]:
    p = "$"
    if family == "ggs":
        params = {"p": _get(data, "p", int, p), "k": _get(data, "k", int, p, 1),
                  "e": _get(data, "e", list, p)}
        if any(isinstance(x, bool) or not isinstance(x, int) for x in params["e"]):
            raise SpecError("$.e", "entries must be integers")
        try:
            DefiningVector(params["p"], params["k"], tuple(params["e"]))
        except FamilyError as exc:
            raise SpecError("$.e", f"invalid defining vector: {exc}") from exc
        return params
    if family == "iterated_wreath":
        if "builtin" in data:
            name = _get(data, "builtin", str, p)
            if name == "s3_regular":
                return {"builtin": name}
            if name == "full_symmetric":
                degrees = _get(data, "degrees", list, p)
                if not degrees or any(isinstance(d, bool) or not isinstance(d, int) or d < 2
                                      for d in degrees):
                    raise SpecError("$.degrees", "expected a list of integers >= 2")
                return {"builtin": name, "degrees": degrees}
            raise SpecError("$.builtin", f"unknown builtin {name!r}")
        levels = _get(data, "levels", list, p)
        if not levels:
            raise SpecError("$.levels", "at least one level is required")
        parsed = []
        for i, lv in enumerate(levels):
            lp = f"$.levels[{i}]"
            if not isinstance(lv, Mapping):
                raise SpecError(lp, "expected an object")
            deg = _get(lv, "degree", int, lp)
            gens = _perm_list(lv.get("generators"), f"{lp}.generators")
            for j, g in enumerate(gens):
                if len(g) != deg:
                    raise SpecError(f"{lp}.generators[{j}]", f"length {len(g)} != degree {deg}")
            if not perm.orbits([tuple(g) for g in gens], deg).is_transitive:
                raise SpecError(lp, "level group is intransitive")
            parsed.append({"degree": deg, "generators": gens})
        return {"levels": parsed, "repeat_last": _get(data, "repeat_last", bool, p, False)}
    if family == "dihedral_binary":
        return {}
    if family == "gl_congruence":
        prime = _get(data, "p", int, p)
        if prime == 2:
            raise SpecError("$.p", "p = 2 is unsupported for gl_congruence")
        params = {"p": prime, "N": _get(data, "N", int, p),
                  "ring": _get(data, "ring", str, p, "p-adic")}
        if params["ring"] not in RING_KINDS:
            raise SpecError("$.ring", f"expected one of {sorted(RING_KINDS)}")
        if params["N"] < 1:
            raise SpecError("$.N", "N must be at least 1")
        if not is_prime(prime):
            raise SpecError("$.p", f"{prime} is not prime")
        return params
    if family == "automaton":
        raw = data.get("automaton", data)
        try:
            aut = Automaton.from_json(raw)
        except (TreeError, ValueError) as exc:
            raise SpecError("$.automaton" if "automaton" in data else "$", str(exc)) from exc
        return {"automaton": aut.to_json()}
    raise SpecError("$.family", f"unknown family {family!r}; expected one of {list(FAMILIES)}")


def parse_spec(source: str | Path | Mapping) -> GroupSpec:
    """Validate a family spec given as a mapping, a JSON file path, or JSON text."""
    if isinstance(source, Mapping):
        data = source
    else:
        text = str(source)
        path = Path(text)
        if not text.lstrip().startswith("{") and path.exists():
            text = path.read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError("$", f"malformed JSON: {exc}") from exc
    if not isinstance(data, Mapping):
        raise SpecError("$", "expected a JSON object")
    family = _get(data, "family", str, "$")
    params = _parse_family(data, family)
    depth = _get(data, "depth", int, "$", None)
    if depth is not None and not 1 <= depth <= MAX_DEPTH:
        raise SpecError("$.depth", f"depth must lie in 1..{MAX_DEPTH}")
    checks = None
    if "checks" in data:
        checks = parse_checks(_get(data, "checks", list, "$"), "$.checks")
    caps = {}
    for key in ("cap_enum", "cap_level"):
        if key in data:
            caps[key] = _get(data, key, int, "$")
    return GroupSpec(family, params, depth, checks, caps)


def parse_checks(raw, path: str = "--checks") -> tuple[str, ...]:
    items = raw.split(",") if isinstance(raw, str) else list(raw)
    items = [str(x).strip() for x in items if str(x).strip()]
    bad = [x for x in items if x not in CHECKS]
    if bad:
        raise SpecError(path, f"unknown check {bad[0]!r}; expected a subset of {list(CHECKS)}")
    return tuple(c for c in CHECKS if c in items)


def build_group(spec: GroupSpec, depth: int) -> TreeGroup:
    """Construct the family at ``depth``; tree-size violations raise ``CapacityError``."""
    fam, prm = spec.family, spec.params
    try:
        if fam == "ggs":
            return ggs_build(DefiningVector(prm["p"], prm["k"], tuple(prm["e"])), depth)
        if fam == "iterated_wreath":
            if prm.get("builtin") == "s3_regular":
                return wreath_build([regular_s3_generators()], depth, repeat_last=True)
            if prm.get("builtin") == "full_symmetric":
                degrees = list(prm["degrees"])
                if len(degrees) < depth:
                    degrees += [degrees[-1]] * (depth - len(degrees))
                return full_symmetric_wreath(degrees[:depth])
            return wreath_build([lv["generators"] for lv in prm["levels"]], depth,
                                repeat_last=prm["repeat_last"])
        if fam == "dihedral_binary":
            return dihedral_build(depth)
        if fam == "gl_congruence":
            return gl_build(prm["p"], prm["N"], depth, prm["ring"])
        if fam == "automaton":
            aut = Automaton.from_json(prm["automaton"])
            names = aut.generators or tuple(s.name for s in aut.states)
            shape = TreeShape.regular(aut.degree, depth)
            return TreeGroup(shape, {n: materialize(aut, shape, n) for n in names}, "automaton")
    except FamilyError as exc:
        raise SpecError("$", str(exc)) from exc
    raise SpecError("$.family", f"unknown family {fam!r}")


# -- analysis -----------------------------------------------------------------


def _guard(notes: list[str], label: str, fn, *args):
    """Run one analysis; capacity overruns become ``None`` plus a note."""
    try:
        return fn(*args)
    except (CapacityError, chartab.CharacterError, perm.PermError) as exc:
        notes.append(f"{label}: {exc}")
        return None


def run(spec: GroupSpec, depth: int | None = None, checks=None,
        cap_enum: int | None = None, cap_level: int | None = None) -> dict:
    """All requested analyses of ``spec`` truncated at ``depth``, as a JSON-ready dict."""
    depth = depth if depth is not None else spec.depth
    if depth is None:
        raise SpecError("$.depth", "no depth given in the spec or on the command line")
    if not 1 <= depth <= MAX_DEPTH:
        raise SpecError("--depth", f"depth must lie in 1..{MAX_DEPTH}")
    checks = tuple(checks) if checks is not None else (spec.checks or CHECKS)
    cap_enum = cap_enum or spec.caps.get("cap_enum", chartab.ORDER_CAP)
    cap_level = cap_level or spec.caps.get("cap_level", DEFAULT_CAP_LEVEL)
    group = build_group(spec, depth)
    shape = group.shape
    notes: list[str] = []

    levels = [{"n": n, "spherical": None, "locally2": None, "distance": None, "rank": None,
               "commutative": None, "theta0": None, "image_order": None}
              for n in range(1, depth + 1)]
    witness = None
    l2_report = None

    if "transitivity" in checks or "zeta" in checks:
        l2_report = _guard(notes, "transitivity", transitivity.is_locally_2_transitive, group)
    if l2_report is not None and "transitivity" in checks:
        for row in levels:
            row["spherical"] = l2_report.spherical[row["n"]]
            row["locally2"] = l2_report.locally2.get(row["n"])
        w = l2_report.witness
        if w is not None:
            witness = {"level": w.level, "u": list(w.u.word), "v": list(w.v.word),
                       "stabilizer_order": w.stabilizer_order, "pairs": w.pairs,
                       "orbit_count": w.orbit_count}

    if {"transitivity", "gelfand"} & set(checks):
        for row in levels:
            n = row["n"]
            if shape.level_size(n) > cap_level:
                notes.append(f"level {n}: |L_n| = {shape.level_size(n)} exceeds the level cap "
                             f"{cap_level}; rank and scheme skipped")
                continue
            if "transitivity" in checks:
                rank = _guard(notes, f"level {n} rank", transitivity.level_rank, group, n)
                if rank is not None:
                    row["rank"] = rank
                    row["distance"] = rank == n + 1
            if "gelfand" in checks:
                try:
                    row["commutative"] = transitivity.level_scheme(group, n).is_commutative
                except SchemeError as exc:
                    notes.append(f"level {n} scheme: {exc}")

    records: list[chartab.DecompositionRecord | None] = []
    if {"decompose", "zeta"} & set(checks):
        for row in levels:
            n = row["n"]
            rec = _guard(notes, f"level {n} theta0", chartab.local_decomposition,
                         group, spine(n - 1), cap_enum)
            records.append(rec)
            if "decompose" in checks and rec is not None:
                row["theta0"] = rec.as_lists()

    if "order" in checks:
        for row in levels:
            n = row["n"]
            if shape.level_size(n) > cap_level:
                notes.append(f"level {n}: image order skipped by the level cap")
                continue
            row["image_order"] = _guard(notes, f"level {n} order",
                                        lambda k: group.level_chain(k).order(), n)

    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION,
                              "spec": spec.to_json() | {"depth": depth},
                              "depth": depth,
                              "level_sizes": [shape.level_size(n) for n in range(depth + 1)],
                              "checks": list(checks),
                              "levels": levels}
    if "transitivity" in checks:
        report["witness"] = witness

    if "transitivity" in checks and "decompose" in checks:
        ranks = [row["rank"] for row in levels]
        if all(r is not None for r in ranks) and all(r is not None for r in records):
            predicted, acc = [], 1
            for rec in records:
                acc += rec.sum_squares
                predicted.append(acc)
            report["rank_identity"] = {"predicted": predicted, "holds": predicted == ranks}
        else:
            report["rank_identity"] = None

    if "zeta" in checks:
        if records and all(r is not None for r in records):
            poly = zeta.boundary_zeta(records, report["level_sizes"], depth)
            applies = l2_report is not None and l2_report.is_locally_2_transitive
            report["zeta"] = {"depth": depth, "terms": poly.as_lists(),
                              "formula_verified": applies}
        else:
            report["zeta"] = None

    if spec.family == "ggs":
        e = DefiningVector(spec.params["p"], spec.params["k"], tuple(spec.params["e"]))
        pred = ggs_prediction(e)
        empirical = (l2_report.is_locally_2_transitive
                     if l2_report is not None and "transitivity" in checks else None)
        report["ggs"] = {"aperiodic": ggs_is_aperiodic(e), "centered": ggs_is_centered(e),
                         "prediction": pred, "empirical": empirical,
                         "agreement": None if pred is None or empirical is None
                         else pred == empirical}
    report["notes"] = notes
    return report


# -- text rendering -----------------------------------------------------------


def _flag(x) -> str:
    return "-" if x is None else ("yes" if x is True else "no" if x is False else str(x))


def _all(levels, key) -> tuple[bool | None, int | None]:
    vals = [(row["n"], row[key]) for row in levels if row[key] is not None]
    if not vals:
        return None, None
    bad = [n for n, v in vals if not v]
    return (not bad), (bad[0] if bad else None)


def format_text(report: Mapping) -> str:
    d = report["depth"]
    spec = json.dumps(report["spec"], sort_keys=True, separators=(",", ":"))
    lines = [f"arborrep report (schema {report['schema_version']})",
             f"spec: {spec}",
             f"level sizes: {' '.join(map(str, report['level_sizes']))}",
             "",
             f"{'n':>3} {'spherical':>9} {'locally2':>8} {'distance':>8} {'rank':>6} "
             f"{'commut.':>7} {'image order':>12}  theta0"]
    for row in report["levels"]:
        th = "-" if row["theta0"] is None else " ".join(f"({a},{b})" for a, b in row["theta0"])
        lines.append(f"{row['n']:>3} {_flag(row['spherical']):>9} {_flag(row['locally2']):>8} "
                     f"{_flag(row['distance']):>8} {_flag(row['rank']):>6} "
                     f"{_flag(row['commutative']):>7} {_flag(row['image_order']):>12}  {th}")
    lines.append("")
    levels = report["levels"]
    for key, label in [("spherical", "spherically transitive"),
                       ("locally2", "locally 2-transitive"),
                       ("distance", "distance transitive"),
                       ("commutative", "boundary Gelfand (commutative schemes)")]:
        ok, first = _all(levels, key)
        if ok is None:
            continue
        tail = "" if ok else f" (first failure at level {first})"
        lines.append(f"{label}: {_flag(ok)} to depth {d}{tail}")
    w = report.get("witness")
    if w:
        lines.append(f"witness: u={w['u']} v={w['v']} common stabiliser image of order "
                     f"{w['stabilizer_order']} has {w['orbit_count']} orbits on "
                     f"{w['pairs']} pairs")
    ri = report.get("rank_identity")
    if ri:
        lines.append(f"rank identity 1 + sum m^2: {_flag(ri['holds'])} to depth {d} "
                     f"(predicted {ri['predicted']})")
    z = report.get("zeta")
    if z:
        terms = " + ".join(str(c) if dim == 1 else f"{c}*{dim}^-s" for dim, c in z["terms"])
        note = "" if z["formula_verified"] else " (not locally 2-transitive: formula not asserted)"
        lines.append(f"zeta to depth {z['depth']}: {terms}{note}")
    g = report.get("ggs")
    if g:
        lines.append(f"ggs: aperiodic {_flag(g['aperiodic'])}, centered {_flag(g['centered'])}, "
                     f"prediction {'unknown' if g['prediction'] is None else _flag(g['prediction'])}")
        agree = {True: "agree", False: "DISAGREE", None: "not comparable"}[g["agreement"]]
        lines.append(f"prediction vs empirical locally 2-transitive: {agree} "
                     f"(empirical {_flag(g['empirical'])} to depth {d})")
    for note in report["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def dumps(report: Mapping) -> str:
    return json.dumps(report, indent=2) + "\n"


# -- click wiring -------------------------------------------------------------


@click.group()
def main():
    """Exact analyses of groups acting on truncated rooted trees."""


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="JSON family spec.")
@click.option("--depth", type=int, default=None, help="Truncation depth (overrides the spec).")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None,
              help="Also write the JSON report here ('-' for stdout only).")
@click.option("--checks", default=",".join(CHECKS), show_default=True)
@click.option("--cap-enum", type=int, default=None,
              help=f"Largest local image enumerated for character tables [{chartab.ORDER_CAP}].")
@click.option("--cap-level", type=int, default=None,
              help=f"Largest level size for pair-orbit analyses [{DEFAULT_CAP_LEVEL}].")
def analyze(spec_path, depth, json_out, checks, cap_enum, cap_level):
    """Analyse the group described by SPEC to the given depth."""
    try:
        spec = parse_spec(Path(spec_path))
        selected = parse_checks(checks)
        report = run(spec, depth, selected, cap_enum, cap_level)
    except SpecError as exc:
        click.echo(f"spec error: {exc}", err=True)
        sys.exit(EXIT_SPEC)
    except CapacityError as exc:
        click.echo(f"capacity error: {exc}", err=True)
        sys.exit(EXIT_CAPACITY)
    except TreeError as exc:
        click.echo(f"spec error: {exc}", err=True)
        sys.exit(EXIT_SPEC)
    if json_out == "-":
        click.echo(dumps(report), nl=False)
        return
    click.echo(format_text(report), nl=False)
    if json_out:
        Path(json_out).write_text(dumps(report))


if __name__ == "__main__":
    main()
