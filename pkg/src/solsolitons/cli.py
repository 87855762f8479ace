"""Command-line front end.

Every command returns an exit status (0 pass, 1 verification failure, 2 usage
or input error) and a report; ``--json`` prints the report as one JSON
document with sorted keys, so identical arguments give identical bytes.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .algebra import BracketNotationError, NotNilpotentError, algebra_from_json, algebra_to_dict
from .catalog import get_entry, load_catalog
from .curvature import curvature_report
from .derivations import derivation_report
from .domains import domain_membership
from .moduli import (
    ExtensionError,
    extend_entry,
    moduli_slice,
    negativity_near_einstein,
    orthogonal_direction_check,
)
from .soliton import SOLITON_TOL, NotNilsolitonError, eigenvalue_type, nilsoliton_certificate
from .weyl import canonical_form, entry_action, entry_rank, random_maximal_abelian, _in_domain
from .derivations import symmetric_derivations

__all__ = ["RunConfig", "run", "main", "build_parser"]

COMMANDS = ("catalog", "verify", "derivations", "rank", "weyl", "canon", "extend",
            "moduli", "curvature", "scan", "verify-all")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str = None
    action: str = None
    seed: int = 0
    samples: int = 256
    tol: float = SOLITON_TOL
    json: bool = False
    point: str = None
    line: str = None
    subspace: str = None
    neighbors: int = 10
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.samples < 1:
            raise UsageError("--samples must be positive")
        if self.seed < 0:
            raise UsageError("--seed must be nonnegative")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return (np.round(obj.astype(float), 12) + 0.0).tolist()
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _parse_vector(text, name):
    try:
        vals = [float(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{name} must be a comma-separated list of numbers") from None
    if not vals:
        raise UsageError(f"{name} is empty")
    return np.array(vals)


def _load_algebra(target):
    """Catalog entry or JSON file; returns (algebra, entry or None)."""
    if target is None:
        raise UsageError("missing catalog id or algebra file")
    if os.path.isfile(target):
        with open(target, encoding="utf-8") as fh:
            text = fh.read()
        return algebra_from_json(text), None
    try:
        entry = get_entry(target)
    except KeyError:
        raise UsageError(f"unknown catalog id or missing file {target!r}") from None
    return entry.algebra(), entry


def _entry(target):
    if target is None:
        raise UsageError("missing catalog id")
    try:
        return get_entry(target)
    except KeyError:
        raise UsageError(f"unknown catalog id {target!r}") from None


def _row(entry):
    return (f"catalog row: {entry.label} (table {entry.table}) {entry.notation} "
            f"type {entry.eigen_type} rank {entry.expected_rank}")


def _cmd_catalog(cfg):
    if cfg.action in (None, "list"):
        rows = [{"id": e.id, "label": e.label, "table": e.table, "notation": e.notation,
                 "eigen_type": e.eigen_type, "rank": e.expected_rank}
                for e in load_catalog()]
        text = [f"{r['id']:<9} {r['notation']:<60} {r['eigen_type']:<28} rank {r['rank']}"
                for r in rows]
        return 0, {"entries": rows}, text
    if cfg.action == "show":
        e = _entry(cfg.target)
        doc = {"id": e.id, "label": e.label, "table": e.table, "notation": e.notation,
               "eigen_type": e.eigen_type, "rank": e.expected_rank, "family": e.family,
               "params": e.params, "domain": e.domain, "einstein": e.einstein,
               "einstein_point": e.einstein_point, "notes": e.notes,
               "algebra": algebra_to_dict(e.algebra())}
        text = [f"{e.id} ({e.label}), table {e.table}",
                f"  bracket      {e.notation}",
                f"  type         {e.eigen_type}",
                f"  rank         {e.expected_rank}"]
        if e.family:
            text.append(f"  family       diag({', '.join(e.family)})")
        if e.domain:
            text.append(f"  domain       {e.domain}")
        if e.einstein:
            text.append(f"  Einstein     {e.einstein}")
        if e.notes:
            text.append(f"  notes        {e.notes}")
        return 0, doc, text
    raise UsageError("catalog takes 'list' or 'show <id>'")


def _verify_one(alg, entry, tol):
    doc = {"id": entry.id if entry else alg.name}
    try:
        cert = nilsoliton_certificate(alg, tol)
    except (NotNilsolitonError, NotNilpotentError) as exc:
        doc.update({"status": "FAIL", "error": str(exc)})
        return False, doc
    etype = eigenvalue_type(cert)
    doc.update(cert.to_dict())
    ok = cert.residual <= tol
    if entry is not None:
        doc["expected_type"] = entry.eigen_type
        ok = ok and str(etype) == str(entry.expected_type())
    doc["status"] = "PASS" if ok else "FAIL"
    return ok, doc


def _cmd_verify(cfg):
    alg, entry = _load_algebra(cfg.target)
    ok, doc = _verify_one(alg, entry, cfg.tol)
    text = []
    if entry is not None:
        text.append(_row(entry))
    if "error" in doc:
        text.append(f"FAIL  {doc['error']}")
    else:
        spec = ", ".join(f"{x:.6g}" for x in doc["D1_spectrum"])
        text += [f"c          {doc['c']:.12g}",
                 f"D1 spectrum {spec}",
                 f"residual   {doc['residual']:.3e}",
                 f"type       {doc['eigen_type']}",
                 doc["status"]]
    return (0 if ok else 1), doc, text


def _cmd_verify_all(cfg):
    rows, text, passed = [], [], 0
    for e in load_catalog():
        ok, doc = _verify_one(e.algebra(), e, cfg.tol)
        passed += ok
        rows.append(doc)
        text.append(f"{doc['status']}  {e.id:<9} {doc.get('eigen_type', doc.get('error'))}")
    text.append(f"{passed}/{len(rows)} PASS")
    return (0 if passed == len(rows) else 1), {"results": rows, "passed": passed,
                                               "total": len(rows)}, text


def _cmd_derivations(cfg):
    alg, _ = _load_algebra(cfg.target)
    rep = derivation_report(alg)
    doc = rep.to_dict()
    d, p, k = rep.dims
    text = [f"dim Der = {d}", f"dim p   = {p}", f"dim k   = {k}"]
    for name, basis in (("p", rep.sym_basis), ("k", rep.skew_basis)):
        for i, m in enumerate(basis):
            text.append(f"{name}[{i}] = {np.round(m, 6).tolist()}")
    return 0, doc, text


def _cmd_rank(cfg):
    alg, entry = _load_algebra(cfg.target)
    if entry is not None:
        r = entry_rank(entry.id, cfg.seed)
    else:
        p_basis = symmetric_derivations(alg)
        r = len(random_maximal_abelian(p_basis, cfg.seed)) if len(p_basis) else 0
    doc = {"rank": r, "seed": cfg.seed}
    text = [f"rank {r}"]
    status = 0
    if entry is not None:
        doc["id"] = entry.id
        doc["expected_rank"] = entry.expected_rank
        status = 0 if r == entry.expected_rank else 1
        text = [_row(entry), f"rank {r} ({'PASS' if status == 0 else 'FAIL'})"]
    return status, doc, text


def _cmd_weyl(cfg):
    e = _entry(cfg.target)
    act = entry_action(e.id)
    doc = act.to_dict()
    doc["id"] = e.id
    doc["params"] = act.frame.params
    text = [_row(e), f"rank {act.rank}, Weyl order {act.order}, domain {act.domain}"]
    for m in act.induced_maps:
        text.append("  " + str((np.round(m, 6) + 0.0).tolist()))
    return 0, doc, text


def _cmd_canon(cfg):
    e = _entry(cfg.target)
    if cfg.point is None:
        raise UsageError("canon needs --point a,b,...")
    act = entry_action(e.id)
    p = _parse_vector(cfg.point, "--point")
    if p.size != act.rank:
        raise UsageError(f"{e.id} has rank {act.rank}; --point has {p.size} entries")
    if not np.any(p):
        raise UsageError("--point must be nonzero")
    cf = canonical_form(p, act)
    inside = _in_domain(cf, act, 1e-9) if act.domain else None
    doc = {"id": e.id, "point": p, "canonical": cf, "domain": act.domain,
           "in_domain": inside}
    text = [f"canonical {np.round(cf, 12).tolist()}"]
    if act.domain:
        text.append(f"domain {act.domain}: {'inside' if inside else 'outside'}")
    return 0, doc, text


def _read_subspace(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read subspace file: {exc}") from None
    arr = np.asarray(data, dtype=float)
    return arr


def _cmd_extend(cfg):
    e = _entry(cfg.target)
    if (cfg.line is None) == (cfg.subspace is None):
        raise UsageError("extend needs exactly one of --line or --subspace")
    pts = _parse_vector(cfg.line, "--line")[None] if cfg.line else _read_subspace(cfg.subspace)
    try:
        if pts.ndim == 3:
            from .moduli import _certificate, extend
            ext = extend(_certificate(e.id), e.algebra(), pts, e.id, cfg.tol)
        else:
            ext = extend_entry(e.id, np.atleast_2d(pts), cfg.tol)
    except ExtensionError as exc:
        raise UsageError(str(exc)) from None
    doc = ext.to_dict()
    v = ext.verdict
    text = [_row(e), f"extension of dimension {ext.algebra.dim} (r = {ext.r})",
            f"<A_i,A_j> = {np.round(ext.a_gram, 12).tolist()}",
            f"H = {np.round(ext.H, 12).tolist()}",
            f"soliton residual {v.residual:.3e} ({'PASS' if v.is_soliton else 'FAIL'})",
            f"Einstein: {v.is_einstein} (residual {v.einstein_residual:.3e})"]
    return (0 if v.is_soliton else 1), doc, text


def _cmd_moduli(cfg):
    try:
        m = int(cfg.target)
    except (TypeError, ValueError):
        raise UsageError("moduli needs an integer dimension") from None
    try:
        sl = moduli_slice(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = [f"Sol({m})", f"{'entry':<10}{'r':>3}{'n':>4}{'rank':>6}{'dim':>5}{'|W|':>6}"
            f"  {'Einstein':<9}domain"]
    for c in sl.components:
        if c.unclassified:
            text.append(f"{c.entry_id:<10}{c.r:>3}{c.nil_dim:>4}{'-':>6}{'-':>5}{'-':>6}  "
                        f"{'':<9}unclassified")
            continue
        w = "-" if c.weyl_order is None else str(c.weyl_order)
        text.append(f"{c.entry_id:<10}{c.r:>3}{c.nil_dim:>4}{c.rank:>6}{c.parameter_dim:>5}"
                    f"{w:>6}  {c.einstein:<9}{c.domain or ''}")
    return 0, sl.to_dict(), text


def _cmd_curvature(cfg):
    alg, _ = _load_algebra(cfg.target)
    rep = curvature_report(alg, cfg.samples, cfg.seed)
    doc = rep.to_dict()
    text = [f"Ricci eigenvalues {np.round(rep.ricci_eigenvalues, 9).tolist()}",
            f"signature (neg, zero, pos) {rep.signature}",
            f"scalar curvature {rep.scalar_curvature:.12g}",
            f"min sampled sectional curvature {rep.min_sectional_sample:.12g}"]
    return 0, doc, text


def _cmd_scan(cfg):
    e = _entry(cfg.target)
    rep = negativity_near_einstein(e.id, samples=cfg.samples, seed=cfg.seed,
                                   neighbors=cfg.neighbors)
    doc = {"id": e.id,
           "einstein": {"all_negative": rep.einstein.all_negative, "min": rep.einstein.min,
                        "max": rep.einstein.max, "planes": rep.einstein.planes},
           "neighbors": [{"all_negative": s.all_negative, "max": s.max,
                          "soliton_residual": ext.verdict.residual} for ext, s in rep.neighbors],
           "all_negative": rep.all_negative}
    text = [_row(e),
            f"Einstein extension: max sectional {rep.einstein.max:.6g} over "
            f"{rep.einstein.planes} planes ({'all negative' if rep.einstein.all_negative else 'not all negative'})"]
    for i, (ext, s) in enumerate(rep.neighbors):
        text.append(f"  neighbor {i}: max sectional {s.max:.6g}")
    status = 0
    if e.expected_rank >= 2:
        orth = orthogonal_direction_check(e.id)
        doc["orthogonal"] = {"direction": orth.direction, "nil_block_defect": orth.nil_block_defect,
                             "ricci_eigenvalues": orth.eigenvalues, "indefinite": orth.indefinite}
        text.append(f"trace-orthogonal direction {np.round(orth.direction, 6).tolist()}: "
                    f"Ric|n defect {orth.nil_block_defect:.2e}, "
                    f"{'indefinite' if orth.indefinite else 'not indefinite'} Ricci")
        if orth.nil_block_defect > cfg.tol:
            status = 1
    return status, doc, text


_HANDLERS = {
    "catalog": _cmd_catalog, "verify": _cmd_verify, "verify-all": _cmd_verify_all,
    "derivations": _cmd_derivations, "rank": _cmd_rank, "weyl": _cmd_weyl,
    "canon": _cmd_canon, "extend": _cmd_extend, "moduli": _cmd_moduli,
    "curvature": _cmd_curvature, "scan": _cmd_scan,
}


def run(config):
    """Execute one command. Returns ``(status, report_dict, text_lines)``."""
    try:
        status, doc, text = _HANDLERS[config.command](config)
    except UsageError as exc:
        return 2, {"error": str(exc)}, [f"error: {exc}"]
    except (BracketNotationError, ValueError) as exc:
        return 2, {"error": str(exc)}, [f"error: {exc}"]
    return status, _clean(doc), text


def _common(suppress):
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--samples", type=int, default=d(256), help="random planes to sample")
    p.add_argument("--tol", type=float, default=d(SOLITON_TOL), help="verification tolerance")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="solsolitons", parents=[_common(False)],
        description="Nilsoliton certificates, Weyl actions and solsoliton extensions.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog entries")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("target", nargs="?")
    for name, helptext in (("verify", "certify a nilsoliton"),
                           ("derivations", "Der, p and k"),
                           ("rank", "rank of a nilsoliton"),
                           ("curvature", "curvature report of a metric Lie algebra")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("target", help="catalog id or algebra JSON file")
    p = sub.add_parser("weyl", parents=[common], help="Weyl group action on a")
    p.add_argument("target")
    p = sub.add_parser("canon", parents=[common], help="canonical form of a line in a")
    p.add_argument("target")
    p.add_argument("--point", required=True)
    p = sub.add_parser("extend", parents=[common], help="solvable extension")
    p.add_argument("target")
    p.add_argument("--line")
    p.add_argument("--subspace", help="JSON file with parameter vectors or matrices")
    p = sub.add_parser("moduli", parents=[common], help="components of Sol(m)")
    p.add_argument("target", metavar="m")
    p = sub.add_parser("scan", parents=[common], help="curvature sign checks")
    p.add_argument("target")
    p.add_argument("--neighbors", type=int, default=10)
    sub.add_parser("verify-all", parents=[common], help="certify the whole catalog")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, target=getattr(args, "target", None),
            action=getattr(args, "action", None), seed=args.seed, samples=args.samples,
            tol=args.tol, json=args.json, point=getattr(args, "point", None),
            line=getattr(args, "line", None), subspace=getattr(args, "subspace", None),
            neighbors=getattr(args, "neighbors", 10))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    status, doc, text = run(cfg)
    if cfg.json:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        stream = sys.stderr if status == 2 else sys.stdout
        for line in text:
            print(line, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
