"""Command-line front end.

    solact <command> [--n v1,v2,...] [--seed S] [--precision BITS]
           [--index-bound B] [--json] FILE [FILE2]

Commands: analyze, entropy, weights, classify, compare, verify.
Exit codes: 0 success (and, for verify, all checks passed); 2 parse error;
3 certification failure; 4 separation failure; 1 other errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .action import SolenoidAction, validate
from .classify import (UnknownVerdict, commutant_torsion, compare,
                       has_virtually_cyclic_factor, total_irreducibility,
                       virtually_cyclic)
from .entropy import (ActionAnalysis, EntropyValue, HomogeneousMeasure,
                      _dec, haar_entropy, haar_entropy_direct,
                      shape_identity_report)
from .intervals import PrecisionError, RatInterval
from .linalg import QMatrix, QSubspace
from .schema import (SchemaError, action_to_json, dump_canonical, load_action,
                     matrix_to_json, poly_to_json, rat_to_str, subspace_to_json)
from .weights import (SeparationError, SignCertificationError, bad_primes,
                      check_product_formula, exposed_classes)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_CERTIFICATION = 3
EXIT_SEPARATION = 4


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    n_vectors: list[tuple[int, ...]] = field(default_factory=list)
    seed: int = 0
    precision: int = 128
    index_bound: int = 10 ** 6
    radius: int = 3
    json_output: bool = False


def _meta(config: RunConfig) -> dict:
    return {
        "tool": "solact",
        "version": __version__,
        "command": config.command,
        "seed": config.seed,
        "precision_bits": config.precision,
        "index_bound": config.index_bound,
        "inputs": list(config.inputs),
    }


def _interval_json(iv: RatInterval) -> list[str]:
    return [_dec(iv.lo), _dec(iv.hi)]


def _weight_json(w, prec: int) -> dict:
    entries = []
    if w.is_archimedean():
        for j in range(w.d):
            e = w.entry_interval(j, prec)
            entries.append({"type": "interval", "lo": _dec(e.lo), "hi": _dec(e.hi)})
    else:
        for v in w.vals:
            entries.append({"type": "qlogp", "p": w.place.prime,
                            "coeff": rat_to_str(-v)})
    return {
        "place": w.place.label(),
        "delta": w.delta,
        "block": w.block,
        "entries": entries,
    }


def _class_json(c, prec: int) -> dict:
    direction = c.direction()
    if c.certainty == "exact" and not c.members[0].is_archimedean():
        dir_json = [rat_to_str(e) for e in direction]
    else:
        dir_json = [{"lo": _dec(e.lo), "hi": _dec(e.hi)} if isinstance(e, RatInterval)
                    else rat_to_str(e) for e in direction]
    return {
        "index": c.index,
        "certainty": c.certainty,
        "warning": c.warning,
        "delta_total": c.delta_total,
        "members": [w.place.label() + f"@block{w.block}" for w in c.members],
        "direction": dir_json,
        "dimension_split": c.dimension_split(),
    }


def analysis_json(analysis: ActionAnalysis, prec: int) -> dict:
    flag = analysis.flag
    return {
        "flag": {
            "length": flag.length,
            "subspace_dimensions": [s.dim for s in flag.subspaces],
            "subspaces": [subspace_to_json(s) for s in flag.subspaces],
            "blocks": [
                {
                    "dimension": nf.degree,
                    "field_poly": poly_to_json(nf.f),
                    "multipliers": [poly_to_json(g) for g in nf.multipliers],
                    "basis_map": matrix_to_json(nf.basis_map),
                }
                for nf in analysis.blocks
            ],
        },
        "weights": [_weight_json(w, prec) for w in analysis.weights],
        "zero_weights": [_weight_json(w, prec) for w in analysis.zero_weights],
        "classes": [_class_json(c, prec) for c in analysis.classes],
    }


def cmd_analyze(config: RunConfig) -> tuple[int, dict]:
    action = load_action(config.inputs[0])
    diag = validate(action)
    if not diag.ok:
        return EXIT_PARSE, {"meta": _meta(config), "validation": diag.problems}
    analysis = ActionAnalysis(action, config.seed, config.precision)
    ti = total_irreducibility(action, config.seed)
    vc = virtually_cyclic(action, config.seed, config.precision)
    hv = has_virtually_cyclic_factor(action, config.seed, config.precision)
    gamma = commutant_torsion(action, config.seed)
    doc = {
        "meta": _meta(config),
        "action": action_to_json(action),
        "validation": "ok",
        "bad_primes": list(bad_primes(action).primes),
        **analysis_json(analysis, config.precision),
        "verdicts": {
            "irreducible": ti.irreducible,
            "totally_irreducible": ti.totally_irreducible,
            "stabilizing_M": ti.M,
            "virtually_cyclic": vc.verdict,
            "relation_basis": [list(b) for b in vc.relations.basis],
            "relation_orders": list(vc.relations.orders),
            "multiplicative_rank": vc.relations.rank,
            "has_virtually_cyclic_factor": hv.verdict,
        },
        "symmetry_group": {
            "order": gamma.group_order,
            "complete": gamma.complete,
            "generators": [{"matrix": matrix_to_json(g), "order": o}
                           for g, o in gamma.generators],
            "note": gamma.note,
        },
    }
    return EXIT_OK, doc


def cmd_weights(config: RunConfig) -> tuple[int, dict]:
    action = load_action(config.inputs[0])
    analysis = ActionAnalysis(action, config.seed, config.precision)
    doc = {"meta": _meta(config),
           "bad_primes": list(bad_primes(action).primes),
           **analysis_json(analysis, config.precision)}
    doc["exposed"] = [{"class": c.index, "verdict": v}
                      for c, v in exposed_classes(analysis.classes, config.precision)]
    return EXIT_OK, doc


def cmd_entropy(config: RunConfig) -> tuple[int, dict]:
    action = load_action(config.inputs[0])
    analysis = ActionAnalysis(action, config.seed, config.precision)
    if not config.n_vectors:
        raise ValueError("entropy requires at least one --n vector")
    reports = []
    for n in config.n_vectors:
        if len(n) != action.d:
            raise ValueError(f"--n {n} has wrong length for d={action.d}")
        rep = haar_entropy(analysis, n, config.precision)
        reports.append(rep.to_json(config.precision))
    return EXIT_OK, {"meta": _meta(config), "entropy": reports}


def cmd_classify(config: RunConfig) -> tuple[int, dict]:
    action = load_action(config.inputs[0])
    ti = total_irreducibility(action, config.seed)
    vc = virtually_cyclic(action, config.seed, config.precision)
    hv = has_virtually_cyclic_factor(action, config.seed, config.precision)
    gamma = commutant_torsion(action, config.seed)
    doc = {
        "meta": _meta(config),
        "verdicts": {
            "irreducible": ti.irreducible,
            "totally_irreducible": ti.totally_irreducible,
            "stabilizing_M": ti.M,
            "witness_sublattice": [list(r) for r in ti.witness_sublattice]
            if ti.witness_sublattice else None,
            "virtually_cyclic": vc.verdict,
            "relation_basis": [list(b) for b in vc.relations.basis],
            "relation_orders": list(vc.relations.orders),
            "multiplicative_rank": vc.relations.rank,
            "has_virtually_cyclic_factor": hv.verdict,
            "vc_factor_witness": subspace_to_json(hv.witness) if hv.witness else None,
        },
        "symmetry_group": {
            "order": gamma.group_order,
            "complete": gamma.complete,
            "generators": [{"matrix": matrix_to_json(g), "order": o}
                           for g, o in gamma.generators],
            "note": gamma.note,
        },
    }
    return EXIT_OK, doc


def cmd_compare(config: RunConfig) -> tuple[int, dict]:
    a1 = load_action(config.inputs[0])
    a2 = load_action(config.inputs[1])
    rep = compare(a1, a2, config.seed, config.precision, config.index_bound)
    doc = {
        "meta": _meta(config),
        "disjoint": rep.disjoint,
        "lattice": [list(r) for r in rep.lattice] if rep.lattice else None,
        "note": rep.block_dims_note,
        "search_exhausted": rep.search_exhausted,
        "weakly_isomorphic": None,
        "common_factor": None,
        "joining_witness": None,
    }
    if rep.weakly_isomorphic:
        w = rep.weakly_isomorphic
        doc["weakly_isomorphic"] = {
            "lattice": [list(r) for r in w.lattice],
            "embedding_image": poly_to_json(w.embedding),
            "source_field": poly_to_json(w.f1),
            "target_field": poly_to_json(w.f2),
            "ratio_orders": list(w.ratio_orders),
        }
    if rep.common_factor:
        c = rep.common_factor
        doc["common_factor"] = {
            "lattice": [list(r) for r in c.lattice],
            "field_poly": poly_to_json(c.field_poly),
            "multipliers": [poly_to_json(g) for g in c.multipliers],
            "block_dims": list(c.block_dims),
        }
    if rep.joining_witness:
        doc["joining_witness"] = subspace_to_json(rep.joining_witness)
    return EXIT_OK, doc


def cmd_verify(config: RunConfig) -> tuple[int, dict]:
    action = load_action(config.inputs[0])
    analysis = ActionAnalysis(action, config.seed, config.precision)
    checks: list[dict] = []
    tol = Fraction(1, 10 ** 9)

    def record(name: str, ok: bool, detail: str = ""):
        checks.append({"check": name, "pass": bool(ok), "detail": detail})

    # product formula per block over a small sample
    sample = [n for n in _sample_grid(action.d, 2)][:8]
    for bi, nf in enumerate(analysis.blocks):
        for n in sample:
            res = check_product_formula(nf, n, config.precision)
            ok = res.contains_zero() and res.width() < tol
            record(f"product_formula.block{bi}.n{list(n)}", ok,
                   f"residual width {_dec(res.width())}")

    # flag additivity against the direct whole-matrix route
    for n in sample[:4]:
        rep = haar_entropy(analysis, n, config.precision)
        direct = haar_entropy_direct(action, n, config.precision)
        total = rep.total.interval(config.precision)
        gap_lo = total.lo - direct.hi
        gap_hi = total.hi - direct.lo
        ok = gap_lo <= 0 <= gap_hi
        record(f"flag_additivity.n{list(n)}", ok,
               f"flag {_dec(total.mid())} vs direct {_dec(direct.mid())}")

    # symmetry and homogeneity
    for n in sample[:4]:
        h1 = haar_entropy(analysis, n, config.precision).total
        h2 = haar_entropy(analysis, [-e for e in n], config.precision).total
        record(f"symmetry.n{list(n)}", _overlap(h1, h2, config.precision))
        for k in (2, 3):
            hk = haar_entropy(analysis, [k * e for e in n], config.precision).total
            record(f"homogeneity.k{k}.n{list(n)}",
                   _overlap(hk, h1.scaled(k), config.precision))

    # shape identity on the diagonal joining of the action with itself
    try:
        prod_gens = tuple(QMatrix.block_diagonal([g, g]) for g in action.generators)
        prod = SolenoidAction(prod_gens)
        m = action.m
        ann = QSubspace(2 * m, [[1 if j == i else (-1 if j == i + m else 0)
                                 for j in range(2 * m)] for i in range(m)])
        g_diag = HomogeneousMeasure(2 * m, ann)
        sir = shape_identity_report(prod, g_diag, block=0, radius=2,
                                    seed=config.seed, prec=config.precision)
        record("shape_identity.diagonal", sir.constant_certified
               and sir.max_width < tol,
               f"kappa in [{_dec(sir.constant.lo)}, {_dec(sir.constant.hi)}]")
    except (ValueError, SignCertificationError) as exc:
        record("shape_identity.diagonal", False, str(exc))

    all_ok = all(c["pass"] for c in checks)
    doc = {"meta": _meta(config), "checks": checks, "all_passed": all_ok}
    return (EXIT_OK if all_ok else EXIT_ERROR), doc


def _overlap(a: EntropyValue, b: EntropyValue, prec: int) -> bool:
    ia = a.interval(prec)
    ib = b.interval(prec)
    return not (ia.hi < ib.lo or ib.hi < ia.lo)


def _sample_grid(d: int, radius: int):
    from itertools import product
    out = []
    for n in product(range(-radius, radius + 1), repeat=d):
        if any(n):
            out.append(tuple(n))
    out.sort(key=lambda n: (sum(abs(e) for e in n), n))
    return out


COMMANDS = {
    "analyze": (cmd_analyze, 1),
    "weights": (cmd_weights, 1),
    "entropy": (cmd_entropy, 1),
    "classify": (cmd_classify, 1),
    "compare": (cmd_compare, 2),
    "verify": (cmd_verify, 1),
}


def _parse_n(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer vector {value!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="solact",
                                 description="exact analysis of commuting "
                                             "automorphisms of solenoids")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("files", nargs="+", help="action file(s), JSON")
    ap.add_argument("--n", action="append", type=_parse_n, default=[],
                    metavar="v1,v2,...", help="exponent vector (repeatable)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--precision", type=int, default=128, metavar="BITS")
    ap.add_argument("--index-bound", type=int, default=10 ** 6)
    ap.add_argument("--radius", type=int, default=3, help="sample grid radius")
    ap.add_argument("--json", action="store_true", dest="json_output")
    ap.add_argument("--version", action="version", version=f"solact {__version__}")
    return ap


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute a command; returns (exit_code, report document)."""
    handler, arity = COMMANDS[config.command]
    if len(config.inputs) != arity:
        raise SchemaError(f"{config.command} expects {arity} input file(s)")
    return handler(config)


def _render_text(doc: dict, out) -> None:
    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                    print(f"{pad}-", file=out)
                else:
                    print(f"{pad}- {v}", file=out)
    walk(doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    config = RunConfig(
        command=args.command,
        inputs=list(args.files),
        n_vectors=list(args.n),
        seed=args.seed,
        precision=args.precision,
        index_bound=args.index_bound,
        radius=args.radius,
        json_output=args.json_output,
    )
    try:
        code, doc = run(config)
    except SchemaError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SeparationError as exc:
        print(f"separation failure: {exc}", file=sys.stderr)
        return EXIT_SEPARATION
    except (SignCertificationError, PrecisionError, UnknownVerdict) as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if config.json_output:
        print(dump_canonical(doc))
    else:
        _render_text(doc, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
