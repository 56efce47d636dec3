"""
Per-class constants for the normalizer checks.

Everything here is data copied from the hand constructions: twisting words,
explicit lifts H1*n, explicit complement generators with the relations
they are claimed to satisfy, the subsystems used to rule out complements,
and the generating sets of the centralizers. Coordinates of torus elements
are written as sympy expressions in q and the named roots of unity, e.g.
"-zeta**(-q)"; relations use the syntax "N1^3", "[N1,N2]", "(N2N3)^3" or
"N4 N5 N4^-1 = N2".
"""
import logging
import re
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import sympy
from pydantic import BaseModel, ConfigDict

from exceptions import InvalidRootIndexError
from ff import RootSpec

logger = logging.getLogger(__name__)

Q = sympy.Symbol("q")
ROOT_NAMES = ("zeta", "xi", "alpha", "lam")
_SYMBOLS = {name: sympy.Symbol(name) for name in ROOT_NAMES}
_SYMBOLS["q"] = Q

T = TypeVar("T")


# --- relation syntax ---

_TOKEN = re.compile(r"\s*(N\d+|(?:[hnw]\d+)+|1(?![\d])|\^-?\d+|[()\[\],=])")


def _tokenize(text: str) -> List[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidRootIndexError(f"Cannot parse relation {text!r} at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


Word = List[Tuple[str, int]]


def _invert(word: Word) -> Word:
    return [(atom, -e) for atom, e in reversed(word)]


class _Parser:
    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InvalidRootIndexError(f"Expected {expected or 'a token'}, got {tok!r}")
        self.pos += 1
        return tok

    def expr(self) -> Word:
        out: Word = []
        while self.peek() not in (None, ")", "]", ",", "="):
            out.extend(self.factor())
        return out

    def factor(self) -> Word:
        tok = self.take()
        if tok == "(":
            base = self.expr()
            self.take(")")
        elif tok == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            # [a, b] = a b a^-1 b^-1
            base = a + b + _invert(a) + _invert(b)
        elif tok == "1":
            base = []
        else:
            base = [(tok, 1)]
        nxt = self.peek()
        if nxt is not None and nxt.startswith("^"):
            self.take()
            k = int(nxt[1:])
            base = (base if k >= 0 else _invert(base)) * abs(k)
        return base


def parse_relation(text: str) -> Word:
    """Flatten 'lhs = rhs' into the word lhs * rhs^-1 over atoms with exponents +-1."""
    parser = _Parser(_tokenize(text))
    lhs = parser.expr()
    if parser.peek() == "=":
        parser.take("=")
        lhs = lhs + _invert(parser.expr())
    if parser.peek() is not None:
        raise InvalidRootIndexError(f"Trailing input in relation {text!r}")
    return lhs


def relator_indices(text: str) -> Tuple[int, ...]:
    """Relation over generators N1, N2, ... as a signed index tuple."""
    out = []
    for atom, e in parse_relation(text):
        if not atom.startswith("N"):
            raise InvalidRootIndexError(f"Relation {text!r} mixes letters other than N_i")
        out.append(int(atom[1:]) * e)
    return tuple(out)


def evaluate_relation(text: str, atom_value: Callable[[str], T], mul: Callable[[T, T], T],
                      inv: Callable[[T], T], one: T) -> T:
    result = one
    for atom, e in parse_relation(text):
        value = atom_value(atom)
        result = mul(result, value if e > 0 else inv(value))
    return result


# --- torus coordinates ---

def exponent_of(expr: sympy.Expr, exponents: Dict[sympy.Symbol, int], half: int) -> int:
    """Discrete log of a monomial in the named roots; -1 maps to half."""
    if expr.is_Integer:
        if expr == 1:
            return 0
        if expr == -1:
            return half
        raise ValueError(f"Coordinate constant {expr} is not +-1")
    if expr.is_Symbol:
        if expr not in exponents:
            raise ValueError(f"Unknown root of unity {expr}")
        return exponents[expr]
    if expr.is_Pow:
        base, e = expr.args
        if not e.is_Integer:
            raise ValueError(f"Exponent {e} is not an integer")
        return int(e) * exponent_of(base, exponents, half)
    if expr.is_Mul:
        return sum(exponent_of(a, exponents, half) for a in expr.args)
    raise ValueError(f"Unsupported coordinate expression {expr}")


class RootRequirement(BaseModel):
    """A named root of unity: x of the given order and/or with x^power = -1."""
    model_config = ConfigDict(frozen=True)

    name: str
    order: Optional[str] = None
    power: Optional[str] = None

    def spec(self, q: int) -> RootSpec:
        ev = lambda s: None if s is None else int(sympy.sympify(s, locals=_SYMBOLS).subs(Q, q))
        return RootSpec(order=ev(self.order), power=ev(self.power))


class GeneratorSpec(BaseModel):
    """H * u with H a product of coordinate tuples and u a Tits word."""
    model_config = ConfigDict(frozen=True)

    name: str
    word: str
    torus: Tuple[Tuple[str, ...], ...] = ()


class Construction(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_index: int
    generators: Tuple[GeneratorSpec, ...]
    relations: Tuple[str, ...] = ()
    roots: Tuple[RootRequirement, ...] = ()
    derived: Tuple[Tuple[str, str], ...] = ()
    q_mod4: Optional[int] = None
    note: str = ""

    def applies(self, q: int) -> bool:
        return self.q_mod4 is None or q % 4 == self.q_mod4

    def specs(self, q: int) -> List[RootSpec]:
        return [r.spec(q) for r in self.roots]

    def root_exponents(self, q: int, root_exponent: Callable[[RootSpec], int], half: int) -> Dict[sympy.Symbol, int]:
        exps = {_SYMBOLS[r.name]: root_exponent(r.spec(q)) for r in self.roots}
        for name, text in self.derived:
            expr = sympy.sympify(text, locals=_SYMBOLS).subs(Q, q)
            exps[_SYMBOLS[name]] = exponent_of(expr, exps, half)
        return exps

    def coordinates(self, gen: GeneratorSpec, q: int, exps: Dict[sympy.Symbol, int], half: int,
                    modulus: int) -> Optional[List[int]]:
        if not gen.torus:
            return None
        total = [0] * 6
        for coords in gen.torus:
            if len(coords) != 6:
                raise ValueError(f"{gen.name} of class {self.class_index} has {len(coords)} coordinates")
            for i, text in enumerate(coords):
                expr = sympy.sympify(text, locals=_SYMBOLS).subs(Q, q)
                total[i] += exponent_of(expr, exps, half)
        return [v % modulus for v in total]


class Subsystem(BaseModel):
    """Centralizer elements and relations used to rule out a complement."""
    model_config = ConfigDict(frozen=True)

    class_index: int
    generators: Tuple[str, ...]
    relations: Tuple[str, ...]
    q_mod4: Optional[int] = None


def _gen(name: str, word: str, *torus: Sequence[str]) -> GeneratorSpec:
    return GeneratorSpec(name=name, word=word, torus=tuple(tuple(t) for t in torus))


def _root(name: str, order: Optional[str] = None, power: Optional[str] = None) -> RootRequirement:
    return RootRequirement(name=name, order=order, power=power)


# --- lifts of the twisting element for the non-split classes ---

LIFTS: Dict[int, Construction] = {
    2: Construction(
        class_index=2,
        generators=(_gen("N1", "n1", ("zeta", "1", "-1", "1", "1", "1")),),
        relations=("N1^2",),
        roots=(_root("zeta", power="q+1"),),
    ),
    3: Construction(
        class_index=3,
        generators=(_gen("N1", "n1n2", ("zeta", "zeta", "-1", "-1", "1", "1")),),
        relations=("N1^2",),
        roots=(_root("zeta", power="q+1"),),
    ),
    5: Construction(
        class_index=5,
        generators=(_gen("N1", "n2n3n5", ("1", "zeta", "zeta", "-1", "zeta", "1")),),
        relations=("N1^2",),
        roots=(_root("zeta", power="q+1"),),
    ),
    7: Construction(
        class_index=7,
        generators=(_gen("N1", "n1n3n4", ("-zeta**(-q)", "-1", "zeta**(-q**2-q)", "zeta", "1", "1")),),
        relations=("N1^4",),
        roots=(_root("zeta", power="2*(q+1)"),),
    ),
    11: Construction(
        class_index=11,
        generators=(_gen("N1", "n1n4n6n3", ("zeta", "-1", "zeta**(q+1)", "-zeta**(-q**2)", "1", "1")),),
        relations=("N1^4",),
        roots=(_root("zeta", power="q**3+q**2+q+1"),),
    ),
    16: Construction(
        class_index=16,
        generators=(_gen("N1", "n1n4n6n3n36",
                         ("zeta", "1", "zeta**(q+1)", "-zeta**(-q**2)", "-1", "zeta**(q**2+1)")),),
        relations=("N1^4",),
        roots=(_root("zeta", power="q**3+q**2+q+1"),),
    ),
}

# classes whose bare twisting word already has the order of w
BARE_LIFTS = (1, 8, 14, 19, 23, 24)


# --- explicit complements for odd q ---

COMPLEMENTS: Dict[int, Construction] = {
    4: Construction(
        class_index=4,
        generators=(
            _gen("N1", "n3n1"), _gen("N2", "h36n2"), _gen("N3", "h2n36"),
            _gen("N4", "n1n4n14n29"), _gen("N5", "h5h6n5"), _gen("N6", "h5n6"),
        ),
        relations=(
            "N2^2", "N3^2", "N5^2", "N6^2", "(N2N3)^3", "(N5N6)^3", "N1^3", "N4^2",
            "[N1,N2]", "[N1,N3]", "[N1,N4]", "[N1,N5]", "[N1,N6]",
            "N4 N5 N4^-1 = N2", "N4 N6 N4^-1 = N3",
        ),
    ),
    6: Construction(
        class_index=6,
        generators=(
            _gen("N1", "n1n3n5", ("1", "1", "1", "1", "-zeta", "-1")),
            _gen("N2", "h36n2"), _gen("N3", "h2n36"),
        ),
        relations=("N2^2", "N3^2", "(N2N3)^3", "N1^6", "[N1,N2]", "[N1,N3]"),
        roots=(_root("zeta", order="2*(q+1)"),),
    ),
    9: Construction(
        class_index=9,
        generators=(
            _gen("N1", "n1n3"),
            _gen("N2", "n2", ("-1", "lam", "1", "-1", "1", "-1")),
            _gen("N3", "n5", ("1", "1", "1", "1", "lam**(-1)", "-1")),
            _gen("N4", "h1h4n1n4n14n29"),
        ),
        relations=("N1^3", "[N1,N4]", "[N1,N2]", "[N1,N3]", "N4^2", "N2^2", "N3^2", "N2 N4 = N4 N3"),
        roots=(_root("xi", order="q**2-1"),),
        derived=(("lam", "xi**((q-1)/2)"),),
    ),
    10: Construction(
        class_index=10,
        generators=(
            _gen("N1", "n1n5n3n6"), _gen("N2", "h36n2"), _gen("N3", "h2n36"),
            _gen("N4", "h1h6n2n26n28n34"), _gen("N5", "h1h3h6n2n24n32n33"),
        ),
        relations=(
            "[N1,N2]", "[N1,N3]", "[N1,N4]", "[N1,N5]", "N1^3",
            "N2^2", "N3^2", "N4^2", "N5^2", "(N2N3)^3", "(N4N5)^3",
            "[N2,N4]", "[N2,N5]", "[N3,N4]", "[N3,N5]",
        ),
    ),
    12: Construction(
        class_index=12,
        generators=(_gen("N1", "n1n4n3n2"), _gen("N2", "h2h5n6")),
        relations=("[N1,N2]", "N1^5", "N2^2"),
    ),
    13: Construction(
        class_index=13,
        generators=(_gen("N1", "n3n2n5n4"), _gen("N2", "h3h5n17n18"), _gen("N3", "h4h6n20n21")),
        relations=("[N1,N2]", "[N1,N3]", "N1^6", "N2^2", "N3^2", "(N2N3)^3"),
    ),
    14: Construction(
        class_index=14,
        generators=(
            _gen("N1", "h6n6n15n20", ("-1", "-1", "alpha", "1", "alpha", "-1")),
            _gen("N2", "h4n4n11n28", ("-1", "alpha", "1", "-1", "-alpha", "1")),
            _gen("N3", "h1h6n1n2n4n6n31n32"),
        ),
        relations=("N1^4", "N2^4", "N3^3", "N1 N2 = N2 N1", "N1^3 N2^2 N3 = N3^2 N2"),
        roots=(_root("alpha", power="2"),),
        q_mod4=1,
    ),
    15: Construction(
        class_index=15,
        generators=(
            _gen("N1", "n1n5n3n6n2", ("-1", "zeta", "1", "-1", "-xi**(q-1)", "-xi**(q**2-1)")),
            _gen("N2", "h1h3h6n24n32n33",
                 ("xi**(q**2+q)", "xi**(q**2+q+1)", "-xi**(2*q**2+q+1)", "-xi**(2*(q**2+q+1))",
                  "xi**((q+1)**2)", "xi**(q**2+q)")),
            _gen("N3", "h1h6n26n28n34",
                 ("xi**(q+1)", "xi**(q**2+q+1)", "xi**((q+1)**2)", "-xi**(2*(q**2+q+1))",
                  "xi**((q+1)**2)", "xi**(q**2+q)")),
        ),
        relations=("N1^6", "N2^2", "N3^2", "[N1,N2]", "[N1,N3]", "(N2N3)^3"),
        roots=(_root("xi", order="2*(q**3-1)"), _root("zeta", order="2*(q+1)")),
    ),
    17: Construction(
        class_index=17,
        generators=(
            _gen("N1", "n1n4n5n3n36",
                 ("zeta**(q**6+q**3-q)", "zeta**(-q**5+1)", "zeta**(-q**5+q**4+q**3+1)",
                  "zeta**(-q**5+q**4+q**3+q**2+1)", "zeta**(q**4+q**3+q**2+1)",
                  "zeta**(q**4+q**3+q**2+q+1)")),
        ),
        relations=("N1^10",),
        roots=(_root("xi", order="(q+1)*(q**5-1)"),),
        derived=(("zeta", "xi**((q-1)/2)"),),
    ),
    18: Construction(
        class_index=18,
        generators=(
            _gen("N1", "n1n4n6n3n5", ("xi", "-1", "-1", "xi**(-1)", "-1", "xi")),
            _gen("N2", "n36", ("zeta", "-zeta**2", "-zeta**2", "zeta**3", "-zeta**2", "zeta")),
        ),
        relations=("N1^6", "N2^2", "[N1,N2]"),
        roots=(_root("xi", power="q+1"), _root("zeta", power="q-1")),
    ),
    19: Construction(class_index=19, generators=(_gen("N1", "n2n5n3n4n6"),), relations=("N1^8",)),
    20: Construction(
        class_index=20,
        generators=(
            _gen("N1", "n20n5n4n3n2",
                 ("-1", "-zeta**q", "-zeta**(-q**4)", "-zeta**(-q**4-q**3)",
                  "zeta**(-q**4-q**3-q**2-1)", "zeta**(-q**3-1)")),
        ),
        relations=("N1^12",),
        roots=(_root("xi", order="(q-1)*(q**2+1)*(q**3+1)"),),
        derived=(("zeta", "xi**((q-1)/2)"),),
    ),
    21: Construction(
        class_index=21,
        generators=(_gen("N1", "h1h2h5n1n2n5n23n26n31"), _gen("N2", "h1h5n1n2n6n8n10n29")),
        relations=(
            "N1^12", "N2^6", "N1^8 N2 N1^-8 N2^-1", "(N1^6 N2^-1)^3",
            "N1^6 N2^2 N1^6 N2^-2", "N2 N1^8 (N1^-1 N2)^2 N1^-1",
        ),
    ),
    22: Construction(
        class_index=22,
        generators=(
            _gen("N1", "n1n4n6n3n5n36",
                 ("lam", "1", "lam**(q+1)", "lam**(-q**2+q+1)", "lam**(q+1)", "lam")),
            _gen("N2", "n24",
                 ("-alpha**(-2)", "1", "1", "-alpha**2", "1", "-alpha**(-2)"),
                 ("alpha**2", "alpha", "alpha", "1", "alpha", "alpha**2")),
            _gen("N3", "h2h3h5n36"),
        ),
        relations=("N2^2", "N3^2", "(N2N3)^3", "[N1,N3]", "[N1,N2]", "N1^6"),
        roots=(_root("xi", order="2*q**3+2"),),
        derived=(("lam", "-xi**2"), ("alpha", "xi**(-q**2+q-1)")),
    ),
    23: Construction(class_index=23, generators=(_gen("N1", "n1n4n6n3n2n5"),), relations=("N1^12",)),
    24: Construction(class_index=24, generators=(_gen("N1", "n1n4n14n3n2n6"),), relations=("N1^9",)),
    25: Construction(
        class_index=25,
        generators=(
            _gen("N1", "n1n4n14n3n2n31n1n4n14n3n2n31"),
            _gen("N2", "h1h2h5n3n6n19n26"),
            _gen("N3", "h2h3h4h5n3n6n14n30"),
            _gen("N4", "h1h2h4h6n1n4n6n13n20n34"),
        ),
        note="relations taken from a presentation of the Weyl images",
    ),
}


# --- subsystems that admit no section ---

_INVOLUTION_BLOCK = Subsystem(
    class_index=2,
    generators=("w1", "w2", "w5", "w29"),
    relations=("N1^2", "[N1,N2]", "[N1,N3]", "[N1,N4]"),
)

OBSTRUCTIONS: Dict[int, Subsystem] = {
    1: _INVOLUTION_BLOCK.model_copy(update={"class_index": 1}),
    2: _INVOLUTION_BLOCK,
    3: _INVOLUTION_BLOCK.model_copy(update={"class_index": 3}),
    5: Subsystem(
        class_index=5,
        generators=("w2w3w5", "w24", "w20w21", "w16w25"),
        relations=("N2^2", "[N2,N1]", "[N2,N3]", "[N2,N4]"),
    ),
    7: Subsystem(
        class_index=7,
        generators=("w6", "w19w26"),
        relations=("N1^2", "N2^2", "(N1N2)^4"),
    ),
    8: Subsystem(
        class_index=8,
        generators=("w1", "w4", "w6", "w36"),
        relations=("N3^2", "[N3,N1]", "[N3,N2]", "[N3,N4]"),
    ),
    11: Subsystem(
        class_index=11,
        generators=("w1w4w6w3", "w6", "w36"),
        relations=("N2^2", "[N3,N1]", "[N3,N2]", "[N2,N1]"),
    ),
    14: Subsystem(
        class_index=14,
        generators=("w3w2w4w14", "w6w15w20"),
        relations=("N2^4", "[N1,N2]"),
    ),
    16: Subsystem(
        class_index=16,
        generators=("w1w4w6w3", "w36", "w6"),
        relations=("N3^2", "[N3,N1]", "[N3,N2]"),
    ),
}


# --- centralizer generators as printed, with relations where they were given ---

CENTRALIZER_WORDS: Dict[int, Tuple[str, ...]] = {
    4: ("w3w1", "w5", "w6", "w2", "w36", "w1w4w14w29"),
    5: ("w2w3w5", "w24", "w17w18", "w20w21", "w16w25"),
    6: ("w1w3w5", "w2", "w36"),
    7: ("w1w3w4", "w6", "w19w26"),
    9: ("w1w3", "w2", "w5", "w1w4w14w29"),
    10: ("w1w5w3w6", "w2", "w36", "w2w26w28w34", "w2w24w32w33"),
    11: ("w1w4w6w3", "w6", "w36"),
    12: ("w1w4w3w2", "w6"),
    13: ("w3w2w5w4", "w17w18", "w20w21"),
    14: ("w6w15w20", "w4w11w28", "w1w2w4w6w31w32"),
    15: ("w1w5w3w6w2", "w24w32w33", "w26w28w34"),
    16: ("w1w4w6w3w36", "w6", "w27", "w36"),
    17: ("w1w4w5w3w36",),
    18: ("w1w4w6w3w5", "w36"),
    19: ("w2w5w3w4w6",),
    20: ("w20w5w4w3w2",),
    21: ("w1w2w5w23w26w31", "w1w2w6w8w10w29"),
    22: ("w1w4w6w3w5w36", "w36", "w24"),
    23: ("w1w4w6w3w2w5",),
    24: ("w1w4w14w3w2w6",),
    25: ("w1w4w14w3w2w31w1w4w14w3w2w31", "w3w6w19w26", "w3w6w14w30", "w1w4w6w13w20w34"),
}

CENTRALIZER_RELATIONS: Dict[int, Tuple[str, ...]] = {
    14: ("N1^4", "N2^4", "N3^3", "N2 N1 = N1 N2", "N1^3 N2^2 N3 = N3^2 N2"),
    21: COMPLEMENTS[21].relations,
}


# --- identities in the Tits group quoted alongside the constructions ---

TITS_IDENTITIES: Tuple[str, ...] = (
    "(n19n26)^2 = h1h4",
    "(n6n19n26)^4 = h1h4",
    "(n1n3n5)^6 = h5",
    "(n1n4n6n3n5)^6 = h1h4h6",
    "(n1n4n5n3n36)^10 = h1h4h6",
    "(n20n5n4n3n2)^12 = h2h3",
    "(n1n5n3n6n2)^6 = h2",
    "(h6n6n15n20)^4 = h2h3",
    "(h4n4n11n28)^4 = h2h3",
    "[h6n6n15n20, h4n4n11n28] = h2h3",
    "(n24n36)^3 = 1",
    "[n1n4n6n3n5n36, n24] = h2h3h5",
    "[n1n4n6n3n5n36, n36] = 1",
    "(n1n4n6n36)^4 = 1",
    "(n3n2n4n14)^4 = 1",
    "[n1, n2] = 1",
    "[n1, n5] = 1",
    "[n1, n29] = 1",
    "[n3n1, n1n4n14n29] = 1",
    "[n3n1, n5] = 1",
    "[n3n1, n6] = 1",
    "[n3n1, n2] = 1",
    "[n3n1, n36] = 1",
    "[n24, n2n3n5] = 1",
    "[n17n18, n2n3n5] = 1",
    "[h4h6n20n21, n2n3n5] = 1",
    "[n16n25, n2n3n5] = 1",
    "[n24, h4h6n20n21] = 1",
    "[n24, n16n25] = 1",
    "[n1n3n4, n6] = 1",
    "[n1n3n4, n19n26] = 1",
    "[n1n4n6n36, n1] = 1",
    "[n1n4n6n36, n4] = 1",
    "[n1n4n6n36, n6] = 1",
    "[n1n4n6n36, n36] = 1",
    "[n6, n1] = 1",
    "[n6, n4] = 1",
    "[n6, n36] = 1",
    "[n1n4n6n3, n6] = 1",
    "[n1n4n6n3, n36] = 1",
    "[n3n2n4n14, h6n6n15n20] = 1",
    "[n3n2n4n14, h4n4n11n28] = 1",
    "[n3n2n4n14, h1h6n1n2n4n6n31n32] = 1",
    "(h6n6n15n20)^3 (h4n4n11n28)^2 h1h6n1n2n4n6n31n32 = (h1h6n1n2n4n6n31n32)^2 h4n4n11n28",
    "[n1n5n3n6n2, h1h3h6n24n32n33] = 1",
    "[n1n5n3n6n2, h1h6n26n28n34] = 1",
    "[n1n4n6n3n36, n1n4n6n3] = 1",
    "[n1n4n6n3n36, n36] = 1",
    "[n1n4n6n3n36, n6] = 1",
    "[n1n5n2n3n6n36, h1h2h5n1n2n5n23n26n31] = 1",
    "[n1n5n2n3n6n36, h1h5n1n2n6n8n10n29] = 1",
    "[n1n4n14n3n2n31, h1h2h5n3n6n19n26] = 1",
    "[n1n4n14n3n2n31, h2h3h4h5n3n6n14n30] = 1",
    "[n1n4n14n3n2n31, h1h2h4h6n1n4n6n13n20n34] = 1",
    "[n1n2n3n5, n1n3] = 1",
    "[n1n2n3n5, n2] = 1",
    "[n1n2n3n5, n5] = 1",
    "[n1n2n3n5, h1h4n1n4n14n29] = 1",
    "(h1h4n1n4n14n29)^2 = 1",
    "n2 h1h4n1n4n14n29 = h1h4n1n4n14n29 n5",
    "[n1n3n5, n2] = 1",
    "[n1n3n5, n36] = 1",
    "[n1n4n6n3n5, n36] = 1",
)


def construction(index: int) -> Optional[Construction]:
    return COMPLEMENTS.get(index)


# classes whose first complement generator is the printed H1*n
_COMPLEMENT_LIFT_ORDERS = {17: 10, 18: 6, 20: 12}


def lift_construction(index: int) -> Optional[Construction]:
    """The explicit H1*n lift when one is printed; complement generators over w are found by closure."""
    if index in LIFTS:
        return LIFTS[index]
    if index in _COMPLEMENT_LIFT_ORDERS:
        c = COMPLEMENTS[index]
        return Construction(
            class_index=index,
            generators=c.generators[:1],
            relations=(f"N1^{_COMPLEMENT_LIFT_ORDERS[index]}",),
            roots=c.roots,
            derived=c.derived,
        )
    return None


@lru_cache()
def parsed_identities() -> Tuple[Tuple[str, Tuple[Tuple[str, int], ...]], ...]:
    return tuple((text, tuple(parse_relation(text))) for text in TITS_IDENTITIES)
