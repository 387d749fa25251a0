"""Shared builders for the Hopf and quantization tests."""

from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.ncalg.Presentation import Presentation, parse_terms
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra

Q_PLUS = {"series_in": "H", "expr": "exp(hbar*x/4)"}
Q_MINUS = {"series_in": "H", "expr": "exp(-hbar*x/4)"}
QUANTUM_H = {
    "series_in": "H",
    "expr": "(exp(hbar*x/4) - exp(-hbar*x/4))/(exp(hbar/4) - exp(-hbar/4))",
}


def build_uh_sl2(order: int = 3, coproduct_e=None, antipode=None) -> HopfStructure:
    letters = ("F", "H", "E")
    rules = {
        ("H", "F"): parse_terms("F*H - 2*F", letters, order),
        ("E", "F"): parse_terms({"sum": ["F*E", QUANTUM_H]}, letters, order),
        ("E", "H"): parse_terms("H*E - 2*E", letters, order),
    }
    U = Presentation("uh_sl2", letters, rules, order=order)
    T = TensorAlgebra(U, 2)
    one, E, F, H = U.one, U.gen("E"), U.gen("F"), U.gen("H")
    qp, qm = U.poly(Q_PLUS), U.poly(Q_MINUS)
    coproduct = {
        "E": coproduct_e(T, U) if coproduct_e else T.tensor(E, one) + T.tensor(qm, E),
        "F": T.tensor(F, qp) + T.tensor(one, F),
        "H": T.tensor(H, one) + T.tensor(one, H),
    }
    antipode = antipode(U) if antipode else {"E": -(qp * E), "F": -(F * qm), "H": -H}
    return HopfStructure.from_images(
        "uh_sl2", U, coproduct, {"E": 0, "F": 0, "H": 0}, antipode
    )
