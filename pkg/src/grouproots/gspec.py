"""A small textual language for describing finite groups.

Grammar (whitespace-insensitive, case-sensitive family letters)::

    spec    := term ( "x" term )*
    term    := family ( "^" INT )?
    family  := "C" INT | "S" INT | "A" INT | "D" INT | "Q8"
             | "PSL(2," INT ")" | "SL(2," INT ")" | "GL(2," INT ")"
             | "Perm[" cycles ("," cycles)* "]"
    cycles  := ( "(" INT (" " INT)* ")" )+

"^" binds tighter than "x"; "x" is the direct product.  "Dn" is the
dihedral group of order 2n; permutation points are 1-based and the ambient
degree is the largest point mentioned.  "^" repeats any term, e.g. "S3^2"
is S3 x S3.
"""

from dataclasses import dataclass
from functools import reduce

from .errors import ParseError, SemanticError
from .fields import field_new
from .groups import Perm, abelian_group, default_cap, direct_product, generate, trivial_group
from .util import prime_power_decompose


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Quaternion8:
    pass


@dataclass(frozen=True)
class PSL2:
    q: int


@dataclass(frozen=True)
class SL2:
    q: int


@dataclass(frozen=True)
class GL2:
    q: int


@dataclass(frozen=True)
class PermGen:
    perms: tuple  # tuple of permutations, each a tuple of cycles of 1-based ints


@dataclass(frozen=True)
class ElementaryPower:
    base: object
    k: int


@dataclass(frozen=True)
class Product:
    parts: tuple


GroupSpec = object  # any of the node classes above


def pretty(spec) -> str:
    """Canonical text form; parse(pretty(s)) == s."""
    if isinstance(spec, Cyclic):
        return f"C{spec.n}"
    if isinstance(spec, Symmetric):
        return f"S{spec.n}"
    if isinstance(spec, Alternating):
        return f"A{spec.n}"
    if isinstance(spec, Dihedral):
        return f"D{spec.n}"
    if isinstance(spec, Quaternion8):
        return "Q8"
    if isinstance(spec, PSL2):
        return f"PSL(2,{spec.q})"
    if isinstance(spec, SL2):
        return f"SL(2,{spec.q})"
    if isinstance(spec, GL2):
        return f"GL(2,{spec.q})"
    if isinstance(spec, PermGen):
        inner = ", ".join(
            "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in perm)
            for perm in spec.perms
        )
        return f"Perm[{inner}]"
    if isinstance(spec, ElementaryPower):
        return f"{pretty(spec.base)}^{spec.k}"
    if isinstance(spec, Product):
        return " x ".join(pretty(p) for p in spec.parts)
    raise TypeError(f"not a group spec: {spec!r}")


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, expected=()):
        raise ParseError(message, self.pos, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def literal(self, s):
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s):
        if not self.literal(s):
            self.error(f"expected {s!r}", expected=(s,))

    def integer(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer", expected=("INT",))
        return int(self.text[start:self.pos])

    def spec(self):
        parts = [self.term()]
        while True:
            self.skip_ws()
            if not self.literal("x"):
                break
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Product(tuple(parts))

    def term(self):
        fam = self.family()
        self.skip_ws()
        if self.literal("^"):
            self.skip_ws()
            k = self.integer()
            if k < 1:
                raise SemanticError(f"power must be at least 1, got {k}")
            return ElementaryPower(fam, k) if k > 1 else fam
        return fam

    def family(self):
        self.skip_ws()
        ch = self.peek()
        if ch == "C":
            self.pos += 1
            self.skip_ws()
            n = self.integer()
            if n < 1:
                raise SemanticError(f"C{n}: cyclic order must be at least 1")
            return Cyclic(n)
        if ch == "S":
            if self.text.startswith("SL", self.pos):
                return self.matrix_family("SL(2,", SL2)
            self.pos += 1
            self.skip_ws()
            n = self.integer()
            if n < 2:
                raise SemanticError(f"S{n}: symmetric degree must be at least 2")
            return Symmetric(n)
        if ch == "A":
            self.pos += 1
            self.skip_ws()
            n = self.integer()
            if n < 2:
                raise SemanticError(f"A{n}: alternating degree must be at least 2")
            return Alternating(n)
        if ch == "D":
            self.pos += 1
            self.skip_ws()
            n = self.integer()
            if n < 3:
                raise SemanticError(f"D{n}: dihedral parameter must be at least 3")
            return Dihedral(n)
        if ch == "Q":
            self.expect("Q8")
            return Quaternion8()
        if ch == "G":
            return self.matrix_family("GL(2,", GL2)
        if ch == "P":
            if self.text.startswith("PSL", self.pos):
                return self.matrix_family("PSL(2,", PSL2)
            return self.perm_family()
        self.error(
            "expected a group family",
            expected=("C", "S", "A", "D", "Q8", "PSL(2,", "SL(2,", "GL(2,", "Perm["),
        )

    def matrix_family(self, opener, node):
        self.expect(opener)
        self.skip_ws()
        q = self.integer()
        self.skip_ws()
        self.expect(")")
        if prime_power_decompose(q) is None:
            raise SemanticError(f"{opener}{q}): {q} is not a prime power")
        return node(q)

    def perm_family(self):
        self.expect("Perm[")
        perms = [self.cycles()]
        while True:
            self.skip_ws()
            if not self.literal(","):
                break
            perms.append(self.cycles())
        self.skip_ws()
        self.expect("]")
        return PermGen(tuple(perms))

    def cycles(self):
        out = []
        self.skip_ws()
        if self.peek() != "(":
            self.error("expected '('", expected=("(",))
        while True:
            self.skip_ws()
            if not self.literal("("):
                break
            pts = [self.integer()]
            while True:
                self.skip_ws()
                if self.peek() == ")":
                    break
                pts.append(self.integer())
            self.expect(")")
            if min(pts) < 1:
                raise SemanticError("permutation points are 1-based")
            if len(set(pts)) != len(pts):
                raise SemanticError(f"repeated point in cycle {tuple(pts)}")
            out.append(tuple(pts))
        return tuple(out)


def parse_spec(text: str):
    """Parse the group language; ParseError carries offset and expected set."""
    p = _Parser(text)
    node = p.spec()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input", expected=("x", "end of input"))
    return node


# -- realization ---------------------------------------------------------------

def _sym_gens(n):
    if n == 2:
        return [Perm.from_cycles([(1, 2)], degree=2)]
    return [
        Perm.from_cycles([(1, 2)], degree=n),
        Perm.from_cycles([tuple(range(1, n + 1))], degree=n),
    ]


def _alt_gens(n):
    if n < 3:
        return []
    if n == 3:
        return [Perm.from_cycles([(1, 2, 3)], degree=3)]
    if n % 2 == 1:
        rot = tuple(range(1, n + 1))
    else:
        rot = tuple(range(2, n + 1))
    return [Perm.from_cycles([(1, 2, 3)], degree=n), Perm.from_cycles([rot], degree=n)]


def _dihedral_gens(n):
    rot = Perm.from_cycles([tuple(range(1, n + 1))], degree=n)
    refl = Perm([(n - j) % n for j in range(n)])
    return [rot, refl]


def _quaternion_group():
    from .groups import cayley_group

    # units 1,-1,i,-i,j,-j,k,-k with the usual sign algebra
    base = {"1": 0, "i": 1, "j": 2, "k": 3}
    mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    units = ["1", "i", "j", "k"]
    labels = []
    for u in units:
        labels.extend([u, f"-{u}"])  # id = 2*base + (sign bit)
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            ua, sa = units[a // 2], -1 if a % 2 else 1
            ub, sb = units[b // 2], -1 if b % 2 else 1
            sign, unit = mul[(ua, ub)]
            sign *= sa * sb
            table[a][b] = 2 * base[unit] + (0 if sign == 1 else 1)
    return cayley_group(table, "Q8", labels=labels, gens=[2, 4])


def realize(spec, cap=None):
    """Build the group a spec describes; CapExceeded if it would be too big."""
    from .psl2 import gl2, psl2, sl2

    cap = default_cap() if cap is None else int(cap)
    if isinstance(spec, str):
        spec = parse_spec(spec)

    if isinstance(spec, Cyclic):
        if spec.n == 1:
            return trivial_group()
        return abelian_group([spec.n], cap=cap)
    if isinstance(spec, Symmetric):
        g = generate(_sym_gens(spec.n), cap=cap, name=f"S{spec.n}")
        return g
    if isinstance(spec, Alternating):
        gens = _alt_gens(spec.n)
        if not gens:
            g = trivial_group()
            g.name = f"A{spec.n}"
            return g
        return generate(gens, cap=cap, name=f"A{spec.n}")
    if isinstance(spec, Dihedral):
        return generate(_dihedral_gens(spec.n), cap=cap, name=f"D{spec.n}")
    if isinstance(spec, Quaternion8):
        return _quaternion_group()
    if isinstance(spec, PSL2):
        return psl2(field_new(spec.q), cap=cap)
    if isinstance(spec, SL2):
        return sl2(field_new(spec.q), cap=cap)
    if isinstance(spec, GL2):
        return gl2(field_new(spec.q), cap=cap)
    if isinstance(spec, PermGen):
        points = [p for perm in spec.perms for cyc in perm for p in cyc]
        degree = max(points) if points else 1
        gens = [Perm.from_cycles(list(perm), degree=degree) for perm in spec.perms]
        return generate(gens, cap=cap, name=pretty(spec))
    if isinstance(spec, ElementaryPower):
        part = realize(spec.base, cap=cap)
        g = reduce(
            lambda acc, _: direct_product(acc, realize(spec.base, cap=cap), cap=cap),
            range(spec.k - 1),
            part,
        )
        g.name = pretty(spec)
        return g
    if isinstance(spec, Product):
        g = reduce(
            lambda acc, part: direct_product(acc, realize(part, cap=cap), cap=cap),
            spec.parts[1:],
            realize(spec.parts[0], cap=cap),
        )
        g.name = pretty(spec)
        return g
    raise TypeError(f"not a group spec: {spec!r}")


__all__ = [
    "Cyclic", "Symmetric", "Alternating", "Dihedral", "Quaternion8",
    "PSL2", "SL2", "GL2", "PermGen", "ElementaryPower", "Product",
    "GroupSpec", "pretty", "parse_spec", "realize",
]
