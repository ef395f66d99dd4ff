#!/usr/bin/env python
"""
run.py – Línea de comandos de los análisis de sistemas asíncronos booleanos

Subcomandos:
  fixed-points, nullclins, portrait, run, reach, transitive, omega, conjugate,
  bifurcation y family-equiv. Opciones globales --format json|text y --jobs N.

Todos los archivos referenciados se analizan antes de ejecutar cualquier análisis.
Códigos de salida:
  0  éxito (o propiedad verdadera en los subcomandos de veredicto)
  1  propiedad falsa
  2  error de uso, de formato o de capacidad
  3  error inesperado

Uso:
  python -m cli.run fixed-points data/staircase.tt
  python -m cli.run --format json conjugate data/xor_shift.tt data/xor_shift_conjugate.tt
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from core.config import get_config, update_config
from core.errors import CapabilityError, ParseError, UsageError
from core.formats import parse_state
from core.pipeline import AnalysisPipeline
from utils.logger import logger

VERDICT_EXIT = {True: 0, False: 1}


@dataclass
class Invocation:
    """Subcomando, archivos de entrada ya resueltos y banderas."""

    subcommand: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    flags: Dict[str, Any] = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xiphi",
        description="Análisis de sistemas asíncronos booleanos regulares universales.",
    )
    # --format y --jobs valen antes o después del subcomando; SUPPRESS evita que el
    # subparser pise el valor global.
    parser.add_argument("--format", choices=["text", "json"], default=None, help="Formato de salida")
    parser.add_argument("--jobs", type=int, default=None, help="Trabajadores para las búsquedas exhaustivas")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fixed-points", parents=[common], help="Puntos fijos de Φ")
    p.add_argument("table")

    p = sub.add_parser("nullclins", parents=[common], help="Nullclinas NC_i de Φ")
    p.add_argument("table")

    p = sub.add_parser("portrait", parents=[common], help="Retrato de fases en DOT")
    p.add_argument("table")
    p.add_argument("--self-loops", action="store_true", default=None, help="Incluir flechas en los puntos fijos")

    p = sub.add_parser("run", parents=[common], help="Corrida continua Φ^ρ(·, μ)")
    p.add_argument("table")
    p.add_argument("--mu", required=True, help="Estado inicial (bits, coordenada 1 primero)")
    p.add_argument("--rho", "--rho-file", dest="rho", required=True, help="Archivo de la función progresiva")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--at", default=None, help="Evalúa la señal en este instante (racional)")
    mode.add_argument("--trace", action="store_true", help="Imprime la traza completa (por defecto)")

    p = sub.add_parser("reach", parents=[common], help="¿Es μ′ accesible desde μ?")
    p.add_argument("table")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)

    p = sub.add_parser("transitive", parents=[common], help="Transitividad existencial o universal")
    p.add_argument("table")
    p.add_argument("--mode", choices=["exists", "forall"], default="exists")

    p = sub.add_parser("omega", parents=[common], help="Pertenencia a Ω_n o enumeración de Ω_n")
    p.add_argument("bijection", nargs="?")
    p.add_argument("--enumerate", type=int, dest="enumerate_width", default=None, metavar="N")

    p = sub.add_parser("conjugate", parents=[common], help="Equivalencia entre dos sistemas")
    p.add_argument("phi")
    p.add_argument("psi")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--witness", default=None, help="Testigo h / --- / h′ a verificar")
    mode.add_argument("--search", action="store_true", help="Busca un testigo (por defecto)")
    p.add_argument("--check-invariants", action="store_true", help="Informe de transferencia de invariantes")

    p = sub.add_parser("bifurcation", parents=[common], help="Diagrama de bifurcación de una familia")
    p.add_argument("family")
    p.add_argument("--fixed-points", action="store_true", help="Incluye el diagrama de puntos fijos")
    p.add_argument("--check-stable", action="store_true", help="Sale con 0/1 según la estabilidad estructural")
    p.add_argument("--out-dir", default=None, help="Directorio para un DOT por representante")

    p = sub.add_parser("family-equiv", parents=[common], help="Equivalencia entre dos familias")
    p.add_argument("f")
    p.add_argument("g")
    return parser


def load_invocation(args: argparse.Namespace, pipeline: AnalysisPipeline) -> Invocation:
    """Analiza todos los archivos y estados de la invocación antes de cualquier análisis."""
    inv = Invocation(args.subcommand)
    command = args.subcommand
    if command in {"fixed-points", "nullclins", "portrait", "run", "reach", "transitive"}:
        inv.inputs["phi"] = pipeline.load_table(args.table)
        width = inv.inputs["phi"].width
    if command == "portrait":
        inv.flags["self_loops"] = args.self_loops
    elif command == "run":
        inv.inputs["mu"] = parse_state(args.mu, width)
        inv.inputs["rho"] = pipeline.load_progressive_function(args.rho)
        inv.flags["at"] = args.at
    elif command == "reach":
        inv.inputs["mu"] = parse_state(args.source, width)
        inv.inputs["mu_prime"] = parse_state(args.target, width)
    elif command == "transitive":
        inv.flags["mode"] = args.mode
    elif command == "omega":
        if (args.bijection is None) == (args.enumerate_width is None):
            raise UsageError("omega necesita un archivo de biyección o --enumerate N (solo uno)")
        if args.bijection is not None:
            inv.inputs["h"] = pipeline.load_bijection(args.bijection)
        inv.flags["enumerate"] = args.enumerate_width
    elif command == "conjugate":
        inv.inputs["phi"] = pipeline.load_table(args.phi)
        inv.inputs["psi"] = pipeline.load_table(args.psi)
        inv.inputs["witness"] = pipeline.load_witness(args.witness) if args.witness else None
        inv.flags["check_invariants"] = args.check_invariants
    elif command == "bifurcation":
        inv.inputs["family"] = pipeline.load_family(args.family)
        inv.flags.update(fixed_points=args.fixed_points, check_stable=args.check_stable, out_dir=args.out_dir)
    elif command == "family-equiv":
        inv.inputs["f"] = pipeline.load_family(args.f)
        inv.inputs["g"] = pipeline.load_family(args.g)
    return inv


def _emit(report: Dict[str, Any], fmt: str, text: Callable[[Dict[str, Any]], List[str]]) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in text(report):
            print(line)


def _verdict_text(key: str) -> Callable[[Dict[str, Any]], List[str]]:
    return lambda report: ["true" if report[key] else "false"]


def _conjugate_text(report: Dict[str, Any]) -> List[str]:
    lines = [f"equivalent: {'true' if report['equivalent'] else 'false'}"]
    if "h" in report:
        lines += ["h:"] + report["h"].splitlines() + ["h':"] + report["h_prime"].splitlines()
    if "counterexample" in report:
        ce = report["counterexample"]
        lines.append(f"counterexample: nu={ce['mask']} mu={ce['state']}")
    if "invariants" in report:
        inv = report["invariants"]
        lines.append(f"invariants: {'true' if inv['holds'] else 'false'}")
        lines += [f"  {detail}" for detail in inv["details"]]
    return lines


def _transitive_text(report: Dict[str, Any]) -> List[str]:
    lines = ["true" if report["transitive"] else "false"]
    ce = report.get("counterexample")
    if ce:
        lines.append(f"{ce['from']} evita {ce['avoids']}")
        lines.append("prefix: " + ", ".join(ce["prefix"]))
        lines.append("cycle: " + ", ".join(ce["cycle"]))
    return lines


def _omega_text(report: Dict[str, Any]) -> List[str]:
    if "members" in report:
        lines = [f"|Ω_{report['width']}| = {report['size']}"]
        for member in report["members"]:
            lines += member.splitlines() + [""]
        return lines
    lines = ["true" if report["member"] else "false"]
    if report["witness"]:
        lines.append("witness: " + " ".join(report["witness"]))
    return lines


def _bifurcation_text(report: Dict[str, Any]) -> List[str]:
    lines = [f"clase {i}: " + " ".join(members) for i, members in enumerate(report["classes"])]
    lines.append(f"estructuralmente estable: {'true' if report['structurally_stable'] else 'false'}")
    if "fixed_point_diagram" in report:
        diagram = report["fixed_point_diagram"]
        for lam, points in diagram["points"].items():
            lines.append(f"puntos fijos lambda={lam}: " + (" ".join(points) if points else "-"))
        if diagram["note"]:
            lines.append(f"nota: {diagram['note']}")
    return lines


def dispatch(inv: Invocation, pipeline: AnalysisPipeline, fmt: str) -> int:
    command = inv.subcommand
    if command == "fixed-points":
        _emit(pipeline.fixed_points_report(inv.inputs["phi"]), fmt, lambda r: r["fixed_points"])
        return 0
    if command == "nullclins":
        report = pipeline.nullclins_report(inv.inputs["phi"])
        _emit(report, fmt, lambda r: [f"NC_{i}: " + " ".join(s) for i, s in r["nullclins"].items()])
        return 0
    if command == "portrait":
        dot = pipeline.portrait(inv.inputs["phi"], inv.flags["self_loops"])
        if fmt == "json":
            _emit({"dot": dot}, fmt, lambda r: [])
        else:
            sys.stdout.write(dot)
        return 0
    if command == "run":
        report = pipeline.run_report(inv.inputs["phi"], inv.inputs["rho"], inv.inputs["mu"], inv.flags["at"])
        if inv.flags["at"] is not None:
            _emit(report, fmt, lambda r: [r["at"]["state"]])
        else:
            _emit(report, fmt, lambda r: r["trace"])
        return 0
    if command == "reach":
        report = pipeline.reach_report(inv.inputs["phi"], inv.inputs["mu"], inv.inputs["mu_prime"])
        _emit(report, fmt, _verdict_text("reachable"))
        return VERDICT_EXIT[report["reachable"]]
    if command == "transitive":
        report = pipeline.transitive_report(inv.inputs["phi"], inv.flags["mode"])
        _emit(report, fmt, _transitive_text)
        return VERDICT_EXIT[report["transitive"]]
    if command == "omega":
        if inv.flags["enumerate"] is not None:
            _emit(pipeline.omega_enumeration_report(inv.flags["enumerate"]), fmt, _omega_text)
            return 0
        report = pipeline.omega_report(inv.inputs["h"])
        _emit(report, fmt, _omega_text)
        return VERDICT_EXIT[report["member"]]
    if command == "conjugate":
        report = pipeline.conjugate_report(inv.inputs["phi"], inv.inputs["psi"], inv.inputs["witness"],
                                           check_invariants=inv.flags["check_invariants"])
        _emit(report, fmt, _conjugate_text)
        return VERDICT_EXIT[report["equivalent"]]
    if command == "bifurcation":
        family = inv.inputs["family"]
        report, portraits = pipeline.bifurcation_report(family)
        if inv.flags["fixed_points"]:
            report = dict(report, fixed_point_diagram=pipeline.fixed_point_diagram_report(family))
        out_dir = inv.flags["out_dir"]
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            files = {}
            for lam, dot in portraits.items():
                path = os.path.join(out_dir, f"lambda_{lam}.dot")
                with open(path, "w", encoding="utf-8") as f:
                    f.write(dot)
                files[lam] = path
            report = dict(report, portraits=files)
        _emit(report, fmt, _bifurcation_text)
        if inv.flags["check_stable"]:
            return VERDICT_EXIT[report["structurally_stable"]]
        return 0
    if command == "family-equiv":
        report = pipeline.family_equivalence_report(inv.inputs["f"], inv.inputs["g"])
        _emit(report, fmt, lambda r: ["true" if r["equivalent"] else "false"]
              + (r["h_double_prime"].splitlines() if r["h_double_prime"] else []))
        return VERDICT_EXIT[report["equivalent"]]
    raise UsageError(f"Subcomando desconocido: {command}")


def main(argv: Optional[List[str]] = None):
    parser = build_parser()
    args = parser.parse_args(argv)

    config_update = {}
    if args.format:
        config_update["output_format"] = args.format
    if args.jobs is not None:
        config_update["jobs"] = args.jobs
    try:
        if config_update:
            update_config(config_update)
        config = get_config()
    except RuntimeError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(2)

    pipeline = AnalysisPipeline()
    try:
        invocation = load_invocation(args, pipeline)
        code = dispatch(invocation, pipeline, config.output_format)
    except (ParseError, UsageError, CapabilityError) as e:
        logger.error(f"Error en {args.subcommand}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(2)
    except Exception as e:
        logger.error(f"Error inesperado en {args.subcommand}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(3)
    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()
