"""
pipeline.py – Orquestación de los análisis para el CLI y la API

La clase AnalysisPipeline:
  - Lee y analiza los archivos de entrada (tablas, biyecciones, testigos, funciones
    progresivas y familias) con diagnósticos de formato.
  - Memoiza los grafos de transición por huella de la tabla (utils/cache_manager).
  - Ejecuta cada análisis y devuelve un informe serializable a JSON, validado contra los
    esquemas de data/ cuando existe uno.
  - Registra errores en el logger centralizado antes de relanzarlos.
"""

import os
from typing import Any, Dict, Optional

from core.bifurcation import (
    ParamFamily,
    bifurcation_diagram,
    families_equivalent,
    family_structurally_stable,
    fixed_point_diagram,
)
from core.boolean import State, TruthTable, fixed_points, nullclin
from core.config import get_config
from core.conjugacy import (
    ConjugacyWitness,
    EquivalenceVerdict,
    check_conjugacy,
    check_invariants_transfer,
    find_equivalence,
)
from core.errors import UsageError
from core.formats import (
    parse_bijection,
    parse_family,
    parse_progressive_function,
    parse_truth_table,
    parse_witness,
    render_bijection,
    render_signal,
)
from core.omega import StateBijection, enumerate_omega, is_coordinate_permutation, is_in_omega
from core.runs import ConstantTail, ProgressiveFunction, continuous_run, detect_period, final_value
from core.state_graph import (
    TransitionGraph,
    accessible,
    build_graph,
    export_portrait,
    forall_counterexample,
    is_transitive_exists,
)
from utils.cache_manager import cached
from utils.logger import logger
from utils.metrics import measure_performance
from utils.validation import validate_report


def _states(values) -> list:
    return [str(mu) for mu in sorted(values)]


class AnalysisPipeline:
    """
    Punto único de entrada a los análisis. Cada método `*_report` devuelve un dict con
    claves deterministas; el CLI lo imprime como JSON o texto y la API lo devuelve tal cual.
    """

    def __init__(self):
        self.config = get_config()
        self.logger = logger

    # ------------------------------------------------------------------
    # Carga de entradas
    # ------------------------------------------------------------------
    def _read(self, path: str) -> str:
        if not os.path.isfile(path):
            raise UsageError(f"No se encontró el archivo: {path}")
        with open(path, "r", encoding="utf-8") as f:
            return f.read()

    def load_table(self, path: str) -> TruthTable:
        return parse_truth_table(self._read(path), source=path)

    def load_bijection(self, path: str) -> StateBijection:
        return parse_bijection(self._read(path), source=path)

    def load_witness(self, path: str) -> ConjugacyWitness:
        return parse_witness(self._read(path), source=path)

    def load_progressive_function(self, path: str) -> ProgressiveFunction:
        return parse_progressive_function(self._read(path), source=path)

    def load_family(self, path: str) -> ParamFamily:
        return parse_family(self._read(path), source=path)

    # ------------------------------------------------------------------
    # Análisis de un sistema
    # ------------------------------------------------------------------
    def graph(self, phi: TruthTable) -> TransitionGraph:
        return cached(f"graph:{phi.fingerprint()}", lambda: build_graph(phi))

    def fixed_points_report(self, phi: TruthTable) -> Dict[str, Any]:
        return {"width": phi.width, "fixed_points": _states(fixed_points(phi))}

    def nullclins_report(self, phi: TruthTable) -> Dict[str, Any]:
        return {
            "width": phi.width,
            "nullclins": {str(i): _states(nullclin(phi, i)) for i in range(1, phi.width + 1)},
        }

    def portrait(self, phi: TruthTable, self_loops: Optional[bool] = None) -> str:
        if self_loops is None:
            self_loops = self.config.portrait_self_loops
        return export_portrait(phi, self_loops=self_loops)

    @measure_performance("pipeline.run")
    def run_report(self, phi: TruthTable, rho: ProgressiveFunction, mu: State,
                   at: Optional[str] = None) -> Dict[str, Any]:
        try:
            x = continuous_run(phi, rho, mu)
            if isinstance(x.tail, ConstantTail):
                tail = {"kind": "constant", "state": str(x.tail.state)}
            else:
                tail = {
                    "kind": "periodic",
                    "start": str(x.tail.start),
                    "period": str(x.tail.period),
                    "pattern": [{"offset": str(off), "state": str(s)} for off, s in x.tail.pattern],
                }
            period = detect_period(x)
            limit = final_value(x)
            report = {
                "initial": str(mu),
                "breakpoints": [{"time": str(t), "state": str(s)} for t, s in x.breakpoints],
                "tail": tail,
                "final_value": str(limit) if limit is not None else None,
                "period": {"period": str(period[0]), "from": str(period[1])} if period else None,
                "trace": render_signal(x),
            }
            if at is not None:
                report["at"] = {"time": at, "state": str(x.value_at(at))}
            validate_report(report, "run")
            return report
        except Exception as e:
            self.logger.error(f"Error en run_report: {e}")
            raise

    def reach_report(self, phi: TruthTable, mu: State, mu_prime: State) -> Dict[str, Any]:
        verdict = accessible(phi, mu, mu_prime, self.graph(phi))
        return {"from": str(mu), "to": str(mu_prime), "reachable": verdict}

    @measure_performance("pipeline.transitive")
    def transitive_report(self, phi: TruthTable, mode: str = "exists") -> Dict[str, Any]:
        graph = self.graph(phi)
        if mode == "exists":
            return {"mode": mode, "transitive": is_transitive_exists(phi, graph), "counterexample": None}
        if mode != "forall":
            raise UsageError(f"Modo de transitividad desconocido: {mode}")
        found = forall_counterexample(phi, graph)
        if found is None:
            return {"mode": mode, "transitive": True, "counterexample": None}
        mu, avoided, lasso = found
        return {
            "mode": mode,
            "transitive": False,
            "counterexample": {
                "from": str(mu),
                "avoids": str(avoided),
                "prefix": [str(nu) for nu in lasso.prefix],
                "cycle": [str(nu) for nu in lasso.cycle],
            },
        }

    # ------------------------------------------------------------------
    # Ω_n
    # ------------------------------------------------------------------
    def omega_report(self, h: StateBijection) -> Dict[str, Any]:
        membership = is_in_omega(h)
        return {
            "member": membership.verdict,
            "failed_condition": membership.failed_condition,
            "witness": _states(membership.witness) if membership.witness else None,
        }

    def omega_enumeration_report(self, width: int) -> Dict[str, Any]:
        members = cached(f"omega:{width}", lambda: enumerate_omega(width))
        return {
            "width": width,
            "size": len(members),
            "members": [render_bijection(h) for h in members],
            "all_coordinate_permutations": all(is_coordinate_permutation(h) for h in members),
        }

    # ------------------------------------------------------------------
    # Equivalencia
    # ------------------------------------------------------------------
    def _verdict_report(self, verdict: EquivalenceVerdict) -> Dict[str, Any]:
        report: Dict[str, Any] = {"equivalent": verdict.equivalent}
        if verdict.witness is not None:
            report["h"] = render_bijection(verdict.witness.h)
            report["h_prime"] = render_bijection(verdict.witness.h_prime)
        if verdict.counterexample is not None:
            nu, mu = verdict.counterexample
            report["counterexample"] = {"mask": str(nu), "state": str(mu)}
        validate_report(report, "verdict")
        return report

    @measure_performance("pipeline.conjugate")
    def conjugate_report(self, phi: TruthTable, psi: TruthTable,
                         witness: Optional[ConjugacyWitness] = None,
                         check_invariants: bool = False) -> Dict[str, Any]:
        """
        Verifica el testigo dado o busca uno. Con check_invariants, si hay equivalencia se
        añade la clave "invariants" con el informe de transferencia.
        """
        try:
            if witness is not None:
                verdict = check_conjugacy(phi, psi, witness)
            else:
                verdict = find_equivalence(phi, psi, jobs=self.config.jobs)
            report = self._verdict_report(verdict)
            if check_invariants and verdict.equivalent:
                report["invariants"] = self.invariants_report(phi, psi, verdict.witness)
            return report
        except Exception as e:
            self.logger.error(f"Error en conjugate_report: {e}")
            raise

    def invariants_report(self, phi: TruthTable, psi: TruthTable, witness: ConjugacyWitness) -> Dict[str, Any]:
        report = check_invariants_transfer(phi, psi, witness)
        return {
            "holds": report.holds,
            "fixed_points": report.fixed_points,
            "periods": report.periods,
            "transitivity": report.transitivity,
            "identity": report.identity,
            "details": list(report.details),
        }

    # ------------------------------------------------------------------
    # Familias
    # ------------------------------------------------------------------
    @measure_performance("pipeline.bifurcation")
    def bifurcation_report(self, family: ParamFamily) -> tuple[Dict[str, Any], Dict[str, str]]:
        """Informe JSON de la partición y, aparte, los retratos DOT de cada representante."""
        diagram = bifurcation_diagram(family, jobs=self.config.jobs)
        report = {
            "state_width": family.state_width,
            "param_width": family.param_width,
            "classes": [[str(lam) for lam in members] for members in diagram.classes],
            "representatives": [str(lam) for lam in diagram.representatives],
            "structurally_stable": not diagram.has_bifurcation,
            "witnesses": [
                {
                    "pair": [str(a), str(b)],
                    "h": render_bijection(w.h),
                    "h_prime": render_bijection(w.h_prime),
                }
                for (a, b), w in sorted(diagram.witnesses.items())
            ],
            "separations": [
                {"classes": list(s.classes), "certificate": s.certificate} for s in diagram.separations
            ],
        }
        validate_report(report, "diagram")
        portraits = {str(lam): dot for lam, dot in diagram.portraits.items()}
        return report, portraits

    def fixed_point_diagram_report(self, family: ParamFamily) -> Dict[str, Any]:
        diagram = fixed_point_diagram(family, jobs=self.config.jobs)
        return {
            "points": {str(lam): _states(points) for lam, points in sorted(diagram.points.items())},
            "uninformative": diagram.uninformative,
            "note": diagram.note,
        }

    def stability_report(self, family: ParamFamily) -> Dict[str, Any]:
        return {"structurally_stable": family_structurally_stable(family, jobs=self.config.jobs)}

    def family_equivalence_report(self, f: ParamFamily, g: ParamFamily) -> Dict[str, Any]:
        h = families_equivalent(f, g, jobs=self.config.jobs)
        return {"equivalent": h is not None, "h_double_prime": render_bijection(h) if h else None}
