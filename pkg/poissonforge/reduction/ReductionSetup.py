import logging
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

from sympy import Add, Dummy, Expr, Mul, groebner
from sympy.polys.domains import QQ_I
from sympy.polys.polytools import GroebnerBasis

from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exactcoeff.HSeries import HBAR_SYMBOL
from poissonforge.exactcoeff.scalars import to_sympy
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.poissongeo.PolyTensors import PolyBivector, PolyVectorField

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ReductionSetup:
    """A Poisson chart with an infinitesimal action and an ideal of constraints.

    Ideal membership is decided by division by a lex Groebner basis of the
    generators, with the ``leading`` variables ordered first so that normal
    forms eliminate them. An invertible variable ``v`` enters the basis as a
    pair ``v, w`` with ``v*w - 1``.
    """

    name: str
    pi: PolyBivector
    fields: Mapping[str, PolyVectorField] = field(default_factory=dict)
    algebra: Optional[LieAlgebra] = None
    hamiltonians: Mapping[str, CoordPoly] = field(default_factory=dict)
    ideal: Sequence[CoordPoly] = ()
    leading: Sequence[str] = ()
    _inverses: dict[str, Dummy] = field(init=False, repr=False)
    _basis: Optional[GroebnerBasis] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ideal", tuple(self.chart.poly(g) for g in self.ideal))
        object.__setattr__(self, "leading", tuple(self.leading))
        for name in self.leading:
            self.chart.index(name)
        inverses = {v: Dummy(f"{v}inv") for v in self.chart.variables if v in self.chart.invertible}
        object.__setattr__(self, "_inverses", inverses)
        object.__setattr__(self, "_basis", self._groebner() if self.ideal else None)

    def _groebner(self) -> GroebnerBasis:
        symbols = self.chart.symbols
        ordered = list(self.leading) + [v for v in self.chart.variables if v not in self.leading]
        gens: list[Any] = []
        for v in ordered:
            gens.append(symbols[v])
            if v in self._inverses:
                gens.append(self._inverses[v])
        gens.append(HBAR_SYMBOL)
        polys = [self._as_expr(g) for g in self.ideal]
        polys += [symbols[v] * w - 1 for v, w in self._inverses.items()]
        basis = groebner(polys, *gens, order="lex", domain=QQ_I)
        logger.debug("%s: Groebner basis of %d elements", self.name, len(basis.exprs))
        return basis

    def _as_expr(self, f: CoordPoly) -> Expr:
        symbols = self.chart.symbols
        terms = []
        for key, c in f.flat_terms():
            factors = [to_sympy(c)]
            for name, e in zip(self.chart.variables, key[:-1]):
                if e > 0:
                    factors.append(symbols[name] ** e)
                elif e < 0:
                    factors.append(self._inverses[name] ** -e)
            if key[-1]:
                factors.append(HBAR_SYMBOL ** key[-1])
            terms.append(Mul(*factors))
        return Add(*terms)

    @property
    def chart(self) -> Chart:
        return self.pi.chart

    @property
    def generators(self) -> list[CoordPoly]:
        return list(self.ideal)

    def reduce(self, f: CoordPoly) -> CoordPoly:
        """The normal form of f modulo the ideal."""
        if self._basis is None:
            return f
        _, remainder = self._basis.reduce(self._as_expr(f))
        back = {w: 1 / self.chart.symbols[v] for v, w in self._inverses.items()}
        return self.chart.poly(remainder.subs(back)).truncate(f.order)

    def contains(self, f: CoordPoly) -> bool:
        return self.reduce(f).is_zero
