"""Presented algebras over the hbar-series ring and their rewriting normal forms.

Generators are ordered; an invertible generator ``g`` gets a companion letter
``ginv`` placed right after it. Rules rewrite a single letter or a pair of
letters to a combination of words that is smaller in (length, letter rank)
order, except for terms whose coefficient is divisible by hbar.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Mapping, Optional, Sequence

from sympy import Add, I, Mul, Poly, Symbol, expand, series, sympify
from sympy.core.sympify import SympifyError

from poissonforge.exactcoeff.HSeries import DEFAULT_ORDER, HBAR_SYMBOL, HSeries
from poissonforge.exceptions import InputException, NonTerminationException, StructureException
from poissonforge.ncalg.NCPoly import NCPoly, Terms, add_scaled, to_series
from poissonforge.report import CheckResult
from poissonforge.utils import words_up_to

logger = logging.getLogger(__name__)

Word = tuple[str, ...]
RuleTable = Mapping[Word, Mapping[Word, Any]]

INVERSE_SUFFIX = "inv"
STRATEGIES = ("left", "right")


def inverse_letter(g: str) -> str:
    return f"{g}{INVERSE_SUFFIX}"


def parse_word(text: str) -> Word:
    """``"E*F"`` -> ``("E", "F")``; ``"1"`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    return tuple(part.strip() for part in text.split("*"))


def _symbols(letters: Sequence[str]) -> dict[str, Symbol]:
    return {g: Symbol(g, commutative=False) for g in letters}


def _parse_text(text: str, letters: Sequence[str], order: int) -> Terms:
    symbols = _symbols(letters)
    try:
        expr = sympify(text, locals={**symbols, "hbar": HBAR_SYMBOL, "i": I})
    except (SympifyError, SyntaxError, TypeError) as e:
        raise InputException(f"cannot parse noncommutative polynomial {text!r}") from e
    terms: Terms = {}
    for term in Add.make_args(expand(expr)):
        commutative, noncommutative = term.args_cnc()
        word: list[str] = []
        for factor in noncommutative:
            base, exp = factor.as_base_exp()
            name = str(base)
            if name not in symbols or not exp.is_Integer:
                raise InputException(f"{text!r}: {factor} is not a power of a generator", key=name)
            if exp < 0:
                inverse = inverse_letter(name)
                if inverse not in symbols:
                    raise InputException(f"{text!r}: {name} is not invertible", key=name)
                word.extend([inverse] * int(-exp))
            else:
                word.extend([name] * int(exp))
        add_scaled(terms, {tuple(word): HSeries.from_expr(Mul(*commutative), order)})
    return terms


def _parse_series_in(spec: Mapping[str, Any], letters: Sequence[str], order: int) -> Terms:
    letter = spec["series_in"]
    if letter not in letters:
        raise InputException(f"unknown generator {letter!r} in series", key=letter)
    variable = Symbol(spec.get("variable", "x"))
    try:
        expr = sympify(spec["expr"], locals={"hbar": HBAR_SYMBOL, variable.name: variable, "i": I})
    except (SympifyError, SyntaxError, TypeError) as e:
        raise InputException(f"cannot parse series {spec['expr']!r}") from e
    if HBAR_SYMBOL in expr.free_symbols:
        expr = series(expr, HBAR_SYMBOL, 0, order).removeO()
    try:
        poly = Poly(expand(expr), variable)
    except Exception as e:
        raise InputException(f"{spec['expr']!r} is not polynomial in {variable} modulo hbar**{order}") from e
    terms: Terms = {}
    for (k,), coeff in poly.terms():
        add_scaled(terms, {(letter,) * k: HSeries.from_expr(coeff, order)})
    return terms


def _concat(left: Terms, right: Terms) -> Terms:
    result: Terms = {}
    for u, a in left.items():
        for v, b in right.items():
            add_scaled(result, {u + v: a * b})
    return result


def parse_terms(spec: Any, letters: Sequence[str], order: int) -> Terms:
    """Raw (unreduced) terms of a polynomial description.

    A description is a string such as ``"F*E + hbar*a**-2"``, a number, or one
    of ``{"series_in": g, "expr": ...}``, ``{"sum": [...]}``,
    ``{"product": [...]}`` and ``{"scale": c, "of": ...}``.
    """
    if isinstance(spec, str):
        return _parse_text(spec, letters, order)
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return {(): to_series(spec, order)}
    if isinstance(spec, Mapping):
        if "series_in" in spec:
            return _parse_series_in(spec, letters, order)
        if "sum" in spec:
            total: Terms = {}
            for part in spec["sum"]:
                add_scaled(total, parse_terms(part, letters, order))
            return total
        if "product" in spec:
            result: Terms = {(): HSeries.one(order)}
            for part in spec["product"]:
                result = _concat(result, parse_terms(part, letters, order))
            return result
        if "scale" in spec:
            factor = to_series(spec["scale"], order)
            return {w: c * factor for w, c in parse_terms(spec["of"], letters, order).items()}
    raise InputException(f"cannot read polynomial description {spec!r}")


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators and rewrite rules of an algebra over formal series in hbar.

    ``rules`` maps a left-hand word (one or two letters) to a combination of
    words. Inverse pairs, the inverse forms of monomial q-commutation rules
    and, with ``commute_by_default``, plain commutation of unrelated
    generators are added automatically.
    """

    name: str
    generators: tuple[str, ...]
    rules: RuleTable = field(default_factory=dict)
    invertible: frozenset[str] = frozenset()
    commute_by_default: bool = True
    order: int = DEFAULT_ORDER
    max_depth: int = 2000
    letters: tuple[str, ...] = field(init=False)
    all_rules: dict[Word, Terms] = field(init=False, repr=False)
    _rank: dict[str, int] = field(init=False, repr=False)
    _memo: dict[str, dict[tuple[Word, int], Terms]] = field(init=False, repr=False)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "generators", tuple(self.generators))
        set_(self, "invertible", frozenset(self.invertible))
        if len(set(self.generators)) != len(self.generators):
            raise StructureException(f"duplicate generators in {self.name}")
        unknown = self.invertible - set(self.generators)
        if unknown:
            raise StructureException(f"invertible generators {sorted(unknown)} not in {self.name}")
        letters: list[str] = []
        for g in self.generators:
            letters.append(g)
            if g in self.invertible:
                letters.append(inverse_letter(g))
        if len(set(letters)) != len(letters):
            raise StructureException(f"inverse letters collide with generators in {self.name}")
        set_(self, "letters", tuple(letters))
        set_(self, "_rank", {g: n for n, g in enumerate(letters)})
        set_(self, "_memo", {s: {} for s in STRATEGIES})

        explicit: dict[Word, Terms] = {}
        for lhs, rhs in self.rules.items():
            lhs = parse_word(lhs) if isinstance(lhs, str) else tuple(lhs)
            if len(lhs) not in (1, 2):
                raise StructureException(f"rule {lhs} of {self.name} must rewrite one or two letters")
            self._check_letters(lhs)
            terms = {}
            for w, c in rhs.items():
                w = parse_word(w) if isinstance(w, str) else tuple(w)
                self._check_letters(w)
                add_scaled(terms, {w: to_series(c, self.order)})
            terms = {w: c for w, c in terms.items() if not c.is_zero}
            for w, c in terms.items():
                if c.valuation == 0 and not self._smaller(w, lhs):
                    raise StructureException(
                        f"rule {'*'.join(lhs)} -> ... {'*'.join(w) or '1'} of {self.name} does not decrease",
                        defect=lhs,
                    )
            explicit[lhs] = terms
        set_(self, "rules", explicit)

        full = dict(explicit)
        one = HSeries.one(self.order)
        for g in self.invertible:
            gi = inverse_letter(g)
            full.setdefault((g, gi), {(): one})
            full.setdefault((gi, g), {(): one})
        self._derive_inverse_rules(explicit, full)
        if self.commute_by_default:
            for x, y in product(letters, repeat=2):
                if self._rank[x] > self._rank[y] and (x, y) not in full:
                    full[(x, y)] = {(y, x): one}
        set_(self, "all_rules", full)

    def _check_letters(self, word: Word):
        for letter in word:
            if letter not in self._rank:
                raise InputException(f"unknown letter {letter!r} in {self.name}", key=letter)

    def _smaller(self, w: Word, lhs: Word) -> bool:
        return self.sort_key(w) < self.sort_key(lhs)

    def _derive_inverse_rules(self, explicit: Mapping[Word, Terms], full: dict[Word, Terms]):
        """x y = c y x implies the matching rules for x^-1 and y^-1."""
        for (x, *rest), terms in explicit.items():
            if len(rest) != 1 or len(terms) != 1:
                continue
            y = rest[0]
            ((w, c),) = terms.items()
            if w != (y, x) or not c.is_unit or x not in self.generators or y not in self.generators:
                continue
            xi, yi = inverse_letter(x), inverse_letter(y)
            if y in self.invertible:
                full.setdefault((x, yi), {(yi, x): c.inverse()})
            if x in self.invertible:
                full.setdefault((xi, y), {(y, xi): c.inverse()})
            if x in self.invertible and y in self.invertible:
                full.setdefault((xi, yi), {(yi, xi): c})

    # algebra interface used by NCPoly

    @property
    def unit_key(self) -> Word:
        return ()

    def sort_key(self, word: Word) -> tuple:
        return (len(word), tuple(self._rank[g] for g in word))

    def key_degree(self, word: Word) -> int:
        return len(word)

    def format_key(self, word: Word) -> str:
        return "*".join(word) or "1"

    def product_keys(self, u: Word, v: Word) -> Terms:
        return self.normal_form_word(u + v)

    # rewriting

    def _redex(self, word: Word, strategy: str) -> Optional[tuple[int, int]]:
        rules = self.all_rules
        positions = range(len(word)) if strategy == "left" else reversed(range(len(word)))
        for i in positions:
            if strategy == "left":
                if (word[i],) in rules:
                    return i, 1
                if i + 1 < len(word) and word[i : i + 2] in rules:
                    return i, 2
            else:
                if (word[i],) in rules:
                    return i, 1
                if i >= 1 and word[i - 1 : i + 1] in rules:
                    return i - 1, 2
        return None

    def _reduce(self, word: Word, strategy: str, depth: int, precision: int) -> Terms:
        """Normal form of ``word`` modulo hbar**precision.

        A rule term with coefficient of valuation v only needs the rest of
        the rewriting to precision - v, so hbar-weighted growth stops once
        the precision is spent.
        """
        if precision <= 0:
            return {}
        memo = self._memo[strategy]
        if (word, precision) in memo:
            return memo[(word, precision)]
        if depth > self.max_depth:
            raise NonTerminationException(f"rewriting in {self.name} exceeded depth {self.max_depth}", word=word)
        redex = self._redex(word, strategy)
        if redex is None:
            result: Terms = {word: HSeries.one(self.order)}
        else:
            start, length = redex
            result = {}
            for rhs, c in self.all_rules[word[start : start + length]].items():
                rest = precision - c.valuation
                if rest <= 0:
                    continue
                rewritten = word[:start] + rhs + word[start + length :]
                reduced = self._reduce(rewritten, strategy, depth + 1, rest)
                add_scaled(result, reduced, c)
            clipped = {w: c.clip(precision) for w, c in result.items()}
            result = {w: c for w, c in clipped.items() if not c.is_zero}
        memo[(word, precision)] = result
        return result

    def normal_form_word(
        self, word: Sequence[str], strategy: str = "left", precision: Optional[int] = None
    ) -> Terms:
        word = tuple(word)
        precision = self.order if precision is None else min(precision, self.order)
        try:
            return self._reduce(word, strategy, 0, precision)
        except RecursionError:
            raise NonTerminationException(
                f"rewriting in {self.name} exceeded the recursion limit", word=word
            ) from None

    def is_normal(self, word: Sequence[str]) -> bool:
        return self._redex(tuple(word), "left") is None

    def normal_monomials(self, degree: int) -> list[Word]:
        """Normal words of length at most ``degree``, shortest first."""
        level: list[Word] = [()]
        found: list[Word] = [()]
        for _ in range(degree):
            nxt = []
            for w in level:
                for g in self.letters:
                    if (g,) in self.all_rules or (w and (w[-1], g) in self.all_rules):
                        continue
                    nxt.append(w + (g,))
            found.extend(nxt)
            level = nxt
        return found

    # elements

    def element(self, terms: Mapping[Word, Any], precision: Optional[int] = None) -> NCPoly:
        result: Terms = {}
        for w, c in terms.items():
            w = tuple(w)
            self._check_letters(w)
            add_scaled(result, self.normal_form_word(w, precision=precision), to_series(c, self.order))
        return NCPoly(self, result, precision)

    def poly(self, spec: Any) -> NCPoly:
        if isinstance(spec, NCPoly):
            return spec
        return self.element(parse_terms(spec, self.letters, self.order))

    def gen(self, letter: str) -> NCPoly:
        return self.element({(letter,): 1})

    def word(self, *letters: str) -> NCPoly:
        return self.element({tuple(letters): 1})

    def const(self, value: Any) -> NCPoly:
        return NCPoly(self, {(): to_series(value, self.order)})

    @property
    def one(self) -> NCPoly:
        return self.const(1)

    @property
    def zero(self) -> NCPoly:
        return NCPoly(self, {})

    def rule_value(self, lhs: Word) -> NCPoly:
        """The reduced right-hand side of a rule."""
        return self.element(self.all_rules[lhs])

    # derived presentations

    def with_rules(self, extra: RuleTable, name: Optional[str] = None) -> "Presentation":
        rules = dict(self.rules)
        rules.update(extra)
        return Presentation(
            name or self.name,
            self.generators,
            rules,
            self.invertible,
            self.commute_by_default,
            self.order,
            self.max_depth,
        )

    def mod_hbar(self) -> "Presentation":
        """The classical limit: only the hbar**0 part of every rule survives."""
        rules = {
            lhs: {w: HSeries.constant(c.coeff(0), self.order) for w, c in rhs.items()}
            for lhs, rhs in self.rules.items()
        }
        return Presentation(
            f"{self.name}/hbar",
            self.generators,
            rules,
            self.invertible,
            self.commute_by_default,
            self.order,
            self.max_depth,
        )

    def check_confluence(self, degree: int) -> CheckResult:
        """Leftmost and rightmost rewriting agree on every word of length 2..degree."""
        defects = []
        for word in words_up_to(self.letters, degree, start=2):
            left = NCPoly(self, self.normal_form_word(word, "left"))
            right = NCPoly(self, self.normal_form_word(word, "right"))
            if left != right:
                defects.append((self.format_key(word), left - right))
                if len(defects) >= 10:
                    break
        logger.debug(
            "confluence of %s to degree %d: %d normal forms cached",
            self.name,
            degree,
            len(self._memo["left"]),
        )
        return CheckResult.from_defects("confluence", defects, degree=degree)
