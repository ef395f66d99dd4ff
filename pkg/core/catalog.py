"""
catalog.py – Sistemas y familias de referencia

Tablas pequeñas con propiedades conocidas, usadas en la documentación, en las pruebas y
como archivos de data/.
"""

from core.bifurcation import ParamFamily
from core.boolean import TruthTable
from core.conjugacy import ConjugacyWitness
from core.omega import StateBijection


def staircase() -> TruthTable:
    """Puntos fijos 00 y 11; 01 → 10 → 11 bajo actualización total."""
    return TruthTable.from_function(2, lambda m: (m[0] | m[1], m[0]))


def feedback_not() -> TruthTable:
    """Φ(μ) = ¬μ en B^1."""
    return TruthTable.from_function(1, lambda m: (1 - m[0],))


def negation(width: int) -> TruthTable:
    return TruthTable.from_function(width, lambda m: tuple(1 - v for v in m))


def gray_cycle() -> TruthTable:
    """00 → 01 → 11 → 10 → 00, cambiando una coordenada en cada paso."""
    return TruthTable.from_function(2, lambda m: (m[1], 1 - m[0]))


def xor_shift() -> TruthTable:
    """Φ(μ1, μ2) = (μ1 ⊕ μ2, ¬μ2)."""
    return TruthTable.from_function(2, lambda m: (m[0] ^ m[1], 1 - m[1]))


def xor_shift_conjugate() -> TruthTable:
    """Ψ(μ1, μ2) = (¬μ1, ¬μ1¬μ2 ∨ μ1μ2)."""
    return TruthTable.from_function(2, lambda m: (1 - m[0], int(m[0] == m[1])))


def xor_shift_witness() -> ConjugacyWitness:
    """h(μ1, μ2) = (¬μ2, ¬μ1) y h′ el intercambio de coordenadas."""
    h = StateBijection(2, (3, 1, 2, 0))
    return ConjugacyWitness(h, StateBijection.coordinate_permutation((2, 1)))


def identity_negation_family() -> ParamFamily:
    return ParamFamily(1, 1, (TruthTable.identity(1), feedback_not()))


def fixed_point_free_family() -> ParamFamily:
    """Sin puntos fijos en ningún miembro, con dos clases de equivalencia."""
    return ParamFamily(2, 1, (negation(2), gray_cycle()))


def xor_pair_family() -> ParamFamily:
    return ParamFamily(2, 1, (xor_shift(), xor_shift_conjugate()))
