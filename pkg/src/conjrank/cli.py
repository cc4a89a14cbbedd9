"""Command-line driver: ``conjrank verify | catalog | show | recheck``.

Exit codes: 0 every verified statement holds, 1 some rank differs from the
cyclic class count, 2 parse or usage error, 3 a size cap was exceeded,
4 a biset failed a hypothesis.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import biset as bs
from . import burnside as bn
from . import fusion as fu
from . import perm_core as pc
from .catalog import APPLICABLE, BUILTIN_FUSION, CatalogEntry, builtin_group, default_catalog
from .errors import CapExceeded, ConjRankError, HypothesisFailed, NotAPGroup, ParseError
from .exact_linalg import RationalMatrix, parse_rational, rank
from .io import parse_generators, read_biset_file, read_group_file

log = logging.getLogger("conjrank")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4
THEOREMS = ("T1", "T2", "T3", "T4")


@dataclass
class VerificationReport:
    entry: str
    theorem: str
    rank: int | None
    cyclic_count: int | None
    holds: bool
    matrix: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    hypotheses: dict = field(default_factory=dict)
    seconds: float = 0.0
    error: str | None = None
    error_kind: str | None = None

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def recheck(self):
        """Recompute the rank of the serialized matrix; True iff it agrees."""
        if self.error:
            return True
        M = RationalMatrix.from_rows([[parse_rational(x) for x in row] for row in self.matrix])
        r = rank(M) if self.matrix else 0
        return r == self.rank and self.holds == (r == self.cyclic_count)


# ---------------------------------------------------------------------------
# entry resolution
# ---------------------------------------------------------------------------

@dataclass
class Resolved:
    entry: CatalogEntry
    G: pc.Group
    H: pc.Group | None = None
    F: fu.FusionSystem | None = None
    omega: bs.Biset | None = None


def _load_group(source, base_dir):
    path = Path(base_dir, source) if base_dir else Path(source)
    if path.is_file():
        return read_group_file(path)
    try:
        return _BuiltinSpec(builtin_group(source))
    except ParseError:
        raise ParseError(f"{source!r} is neither a file nor a builtin group") from None


@dataclass
class _BuiltinSpec:
    group: pc.Group
    sylow: int | None = None
    sub: str | None = None


def _prime_of(order):
    for p in range(2, order + 1):
        if order % p == 0:
            return p
    return 2


def resolve(entry, base_dir=None):
    spec = _load_group(entry.source, base_dir)
    G = spec.group
    sylow = entry.params.get("sylow", spec.sylow)
    sub = entry.params.get("sub", spec.sub)
    H = None
    p = None
    if sub:
        H = G.subgroup(parse_generators(sub, G.degree))
    elif sylow:
        p = int(sylow)
        H = pc.sylow_subgroup(G, p)
    if entry.kind == "group":
        return Resolved(entry, G, H or G)
    if H is None:
        raise ParseError(f"entry {entry.id!r}: fusion needs 'sylow' or 'sub'")
    if p is None:
        p = _prime_of(H.order)
        if not pc.is_p_group(H, p):
            raise NotAPGroup(f"entry {entry.id!r}: S of order {H.order} is not a p-group")
    F = fu.realize(G, H, p)
    omega = None
    if entry.kind == "biset":
        path = entry.params.get("biset")
        if not path:
            raise ParseError(f"entry {entry.id!r}: biset entries need a 'biset' file")
        omega = read_biset_file(Path(base_dir, path) if base_dir else Path(path), H)
    else:
        omega = bs.group_as_biset(G, H)
    return Resolved(entry, G, H, F, omega)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _report(entry, tag, r, cyc, M, hypotheses, t0, holds=None):
    return VerificationReport(
        entry=entry.id, theorem=tag, rank=r, cyclic_count=cyc,
        holds=(r == cyc) if holds is None else holds,
        matrix=M.to_strings(), labels=list(M.row_labels), hypotheses=hypotheses,
        seconds=round(time.perf_counter() - t0, 6))


def run_theorem(res, tag):
    t0 = time.perf_counter()
    e = res.entry
    if tag == "T1":
        rep = bn.verify_theorem_group(res.G, res.H)
        return _report(e, tag, rep.rank, rep.cyclic_classes, rep.matrix, {}, t0)
    F = res.F
    if tag == "T2":
        rep = fu.verify_theorem_fusion_group(F)
        return _report(e, tag, rep.rank, rep.cyclic_f_classes, rep.matrix, {}, t0)
    if tag == "T3":
        try:
            rep = bs.verify_general_biset(res.omega, F)
        except HypothesisFailed as exc:
            out = VerificationReport(e.id, tag, None, None, False, error=str(exc),
                                     error_kind="HypothesisFailed",
                                     hypotheses={"failed": exc.hypothesis},
                                     seconds=round(time.perf_counter() - t0, 6))
            return out
        hyp = {
            "f_stable": rep.f_stable, "f_generated": rep.f_generated,
            "contains_S": rep.contains_s, "stability_mode": rep.stability_mode,
            "support_ok": rep.support_ok, "normalizer_bound_ok": rep.normalizer_bound_ok,
            "quotient_basis_ok": rep.quotient_basis_ok,
            "index_coprime": (res.omega.size // F.S.order) % F.p != 0,
        }
        if e.kind == "fusion":
            M2, _ = bn.coset_matrix(F.ambient, F.S)
            hyp["matches_T2"] = M2.entries == rep.matrix.entries
        return _report(e, tag, rep.rank, rep.cyclic_f_classes, rep.matrix, hyp, t0,
                       holds=rep.holds)
    if tag == "T4":
        stable = fu.theorem4_rank(F, "stable")
        idem = fu.theorem4_rank(F, "idempotent")
        hyp = {"rank_stable": stable.rank, "rank_idempotent": idem.rank}
        if res.omega is not None:
            quotients = [bs.right_quotient(res.omega, c.representative) for c in F.f_classes]
            hyp["rank_quotient"] = fu.theorem4_rank(F, quotients).rank
        ok = len({v for k, v in hyp.items()}) == 1 and stable.holds
        return _report(e, tag, stable.rank, stable.cyclic_f_classes, stable.matrix, hyp, t0,
                       holds=ok)
    raise ParseError(f"unknown theorem {tag!r}")


def _theorems_for(entry, requested):
    applicable = APPLICABLE[entry.kind]
    if requested in (None, "all"):
        return list(entry.theorems or applicable)
    if requested not in applicable:
        raise ParseError(f"theorem {requested} does not apply to a {entry.kind} entry "
                         f"(applicable: {', '.join(applicable)})")
    return [requested]


def cmd_verify(entry, theorem="all", base_dir=None):
    """Run the requested theorem(s) on one entry; errors become reports."""
    try:
        tags = _theorems_for(entry, theorem)
        res = resolve(entry, base_dir)
        return [run_theorem(res, tag) for tag in tags]
    except ConjRankError as exc:
        kind = type(exc).__name__
        if isinstance(exc, NotAPGroup):
            kind = "ParseError"
        return [VerificationReport(entry.id, theorem or "all", None, None, False,
                                   error=str(exc), error_kind=kind)]


def _task(args):
    entry, theorem, base_dir, caps = args
    pc.set_caps(**caps)
    return cmd_verify(entry, theorem, base_dir)


def exit_code(reports):
    kinds = {r.error_kind for r in reports if r.error_kind}
    if "HypothesisFailed" in kinds:
        return EXIT_HYPOTHESIS
    if "CapExceeded" in kinds:
        return EXIT_CAP
    if kinds:
        return EXIT_PARSE
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def run_entries(entries, theorem="all", base_dir=None, jobs=1):
    caps = {"order": pc.CAPS.order, "subgroups": pc.CAPS.subgroups,
            "biset_order": pc.CAPS.biset_order}
    tasks = [(e, theorem, base_dir, caps) for e in entries]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [cmd_verify(e, theorem, base_dir) for e in entries]
    return [r for group in results for r in group]


def load_catalog(path):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read catalog {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"catalog {path} is not valid JSON: {exc}") from None
    items = data.get("entries", []) if isinstance(data, dict) else data
    if not isinstance(items, list):
        raise ParseError("catalog must be a list of entries or {'entries': [...]}")
    entries = []
    seen = set()
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ParseError(f"catalog entry {i} is not an object")
        kind = item.get("kind", "group")
        if kind not in APPLICABLE:
            raise ParseError(f"catalog entry {i}: unknown kind {kind!r}")
        source = item.get("builtin") or item.get("group") or item.get("ambient")
        if not source:
            raise ParseError(f"catalog entry {i}: needs 'builtin', 'group' or 'ambient'")
        eid = str(item.get("id", f"{kind}-{i}"))
        if eid in seen:
            raise ParseError(f"duplicate catalog id {eid!r}")
        seen.add(eid)
        params = {k: item[k] for k in ("sub", "sylow", "biset") if k in item}
        theorems = tuple(item.get("theorems", ()))
        bad = set(theorems) - set(APPLICABLE[kind])
        if bad:
            raise ParseError(f"catalog entry {eid!r}: theorems {sorted(bad)} do not apply")
        entries.append(CatalogEntry(eid, kind, source, params, theorems))
    return entries


def cmd_catalog_run(path=None, jobs=1):
    """Run every entry of a catalog file (or the builtin catalog)."""
    if path is None:
        entries, base = default_catalog(), None
    else:
        entries, base = load_catalog(path), str(Path(path).parent)
    reports = run_entries(entries, "all", base, jobs)
    passed = sum(1 for r in reports if r.holds)
    return {"passed": passed, "total": len(reports), "reports": reports,
            "exit": exit_code(reports)}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def format_matrix(rows):
    if not rows:
        return "  (empty)"
    width = max(len(x) for row in rows for x in row)
    return "\n".join("  " + " ".join(x.rjust(width) for x in row) for row in rows)


def format_report(r):
    head = f"[{r.entry}] {r.theorem}"
    if r.error:
        return f"{head}: {r.error_kind}: {r.error}"
    rows = [[x[:-2] if x.endswith("/1") else x for x in row] for row in r.matrix]
    lines = [head]
    for i, lab in enumerate(r.labels):
        lines.append(f"  {i}: {lab}")
    lines.append(format_matrix(rows))
    for k, v in r.hypotheses.items():
        lines.append(f"  {k}: {v}")
    verdict = "HOLDS" if r.holds else "FAILS"
    lines.append(f"  rank {r.rank}, cyclic classes {r.cyclic_count}: {verdict}")
    return "\n".join(lines)


def _class_line(i, c, top):
    kind = "cyclic" if c.is_cyclic else "noncyclic"
    rep = bn.class_label(c.representative, top)
    return f"  {i}: order {c.order}, {kind}, {len(c.members)} member(s), rep {rep}"


def cmd_show(entry, obj, base_dir=None):
    res = resolve(entry, base_dir)
    if obj in ("marks", "idempotents"):
        G = res.F.S if res.F is not None else res.G
        ring = bn.burnside_ring(G)
        lines = [f"{obj} of {G.label()}"]
        lines += [_class_line(i, c, G) for i, c in enumerate(ring.classes)]
        if obj == "marks":
            rows = [[str(x.numerator) for x in row] for row in ring.table.M.entries]
            lines.append(format_matrix(rows))
        else:
            for i, e in enumerate(ring.idempotents):
                lines.append(f"  e[{ring.label(i)}] = {e}")
        return "\n".join(lines)
    if res.F is None:
        raise ParseError(f"'{obj}' needs a fusion entry (--ambient with --sylow or --sub)")
    F = res.F
    if obj == "fclasses":
        lines = [f"F-classes of {F.S.label()} in {F.ambient.label()}: {len(F.f_classes)}"]
        for i, c in enumerate(F.f_classes):
            lines.append(_class_line(i, c, F.S))
            lines += [f"      {m.label()}" for m in c.members]
        return "\n".join(lines)
    if obj == "stablebasis":
        lines = [f"stable basis of B(F), {len(F.f_classes)} elements"]
        for c, b in zip(F.f_classes, fu.stable_basis(F)):
            lines.append(f"  b[{bn.class_label(c.representative, F.S)}] = {b}")
        return "\n".join(lines)
    if obj == "orbittypes":
        lines = [f"orbit types of {res.omega!r}"]
        for t in bs.orbit_types(res.omega):
            desc = f"stabilizer order {t.stabilizer.order}, multiplicity {t.multiplicity}"
            if t.twisted_diagonal is not None:
                P, phi = t.twisted_diagonal
                maps = ", ".join(f"{u}->{phi[u]}" for u in P.generators)
                desc += f", Delta({P.label()}; {maps or 'id'})"
            else:
                desc += ", not a twisted diagonal"
            lines.append("  " + desc)
        return "\n".join(lines)
    raise ParseError(f"unknown object {obj!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _entry_from_args(args):
    params = {}
    if args.sub:
        params["sub"] = args.sub
    if args.sylow:
        params["sylow"] = args.sylow
    if getattr(args, "biset", None):
        params["biset"] = args.biset
    if args.builtin and args.builtin in BUILTIN_FUSION:
        ambient, p = BUILTIN_FUSION[args.builtin]
        params.setdefault("sylow", p)
        return CatalogEntry(args.builtin, "fusion", ambient, params)
    if args.ambient:
        kind = "biset" if params.get("biset") else "fusion"
        return CatalogEntry(args.ambient, kind, args.ambient, params)
    source = args.builtin or args.group
    if not source:
        raise ParseError("one of --builtin, --group or --ambient is required")
    return CatalogEntry(source, "group", source, params)


def _add_entry_args(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", help="builtin group or fusion system name")
    src.add_argument("--group", help="group file")
    src.add_argument("--ambient", help="ambient group (file or builtin) of a fusion system")
    p.add_argument("--sub", help="subgroup generators, e.g. '(0 1 2 3); (0 2)'")
    p.add_argument("--sylow", type=int, help="use a Sylow p-subgroup")
    p.add_argument("--biset", help="explicit biset action table (with --ambient)")


def _add_common(p):
    p.add_argument("--json", help="write reports as JSON to this path")
    p.add_argument("--cap-order", type=int)
    p.add_argument("--cap-subgroups", type=int)
    p.add_argument("--jobs", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(prog="conjrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one entry")
    _add_entry_args(v)
    v.add_argument("--theorem", default="all", choices=THEOREMS + ("all",))
    _add_common(v)

    c = sub.add_parser("catalog", help="run a catalog file (default: builtin catalog)")
    c.add_argument("path", nargs="?")
    _add_common(c)

    s = sub.add_parser("show", help="print marks, idempotents, F-classes, ...")
    _add_entry_args(s)
    s.add_argument("object", choices=("marks", "idempotents", "fclasses", "orbittypes",
                                      "stablebasis"))
    s.add_argument("--cap-order", type=int)
    s.add_argument("--cap-subgroups", type=int)

    r = sub.add_parser("recheck", help="recompute ranks in a JSON report")
    r.add_argument("path")
    return parser


def _write_json(path, payload):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    saved = dataclasses.replace(pc.CAPS)
    try:
        pc.caps_from_env()
        if getattr(args, "cap_order", None) or getattr(args, "cap_subgroups", None):
            pc.set_caps(order=args.cap_order, subgroups=args.cap_subgroups)

        if args.command == "verify":
            entry = _entry_from_args(args)
            reports = cmd_verify(entry, args.theorem)
            for r in reports:
                print(format_report(r), file=out)
            if args.json:
                _write_json(args.json, {"reports": [r.to_dict() for r in reports]})
            return exit_code(reports)

        if args.command == "catalog":
            summary = cmd_catalog_run(args.path, jobs=args.jobs)
            for r in summary["reports"]:
                print(format_report(r), file=out)
            print(f"summary: {summary['passed']}/{summary['total']} passed", file=out)
            if args.json:
                _write_json(args.json, {"passed": summary["passed"], "total": summary["total"],
                                        "reports": [r.to_dict() for r in summary["reports"]]})
            return summary["exit"]

        if args.command == "show":
            print(cmd_show(_entry_from_args(args), args.object), file=out)
            return EXIT_OK

        if args.command == "recheck":
            try:
                data = json.loads(Path(args.path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"cannot read report {args.path}: {exc}") from None
            reports = [VerificationReport.from_dict(d) for d in data.get("reports", [])]
            bad = [r for r in reports if not r.recheck()]
            for r in reports:
                status = "ok" if r not in bad else "MISMATCH"
                print(f"[{r.entry}] {r.theorem}: rank {r.rank} {status}", file=out)
            return EXIT_FAIL if bad else EXIT_OK
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HypothesisFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ConjRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    finally:
        pc.set_caps(saved.order, saved.subgroups, saved.biset_order)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
