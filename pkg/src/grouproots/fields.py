"""Exact arithmetic in small finite fields GF(p^f).

Elements are addressed by dense index 0..q-1: the index is the base-p
integer whose digits (least significant first) are the coefficients of the
representing polynomial, constant term first.  All arithmetic is
table-driven so the matrix-group code can gather through numpy arrays.

The representing modulus is the lexicographically least monic irreducible
polynomial of degree f over GF(p), coefficients compared constant term
first.  That choice is deterministic and needs no external polynomial
tables.
"""

from functools import lru_cache
from itertools import product as _iproduct

import numpy as np

from .errors import CapExceeded, DivisionByZero, NotAPrimePower
from .util import is_prime, prime_power_decompose

# Table-backed fields only; far above anything the group constructions need.
MAX_FIELD_ORDER = 1024
MAX_EXTENSION_DEGREE = 4


# -- polynomial helpers over GF(p); coefficients constant-term-first --------

def _poly_trim(c):
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_mod(num, den, p):
    """Remainder of num / den over GF(p); den monic."""
    num = list(num)
    dn = len(den) - 1
    for k in range(len(num) - 1, dn - 1, -1):
        coef = num[k] % p
        if coef:
            for j in range(dn + 1):
                num[k - dn + j] = (num[k - dn + j] - coef * den[j]) % p
    return tuple(c % p for c in num[:dn]) or (0,)


def _poly_has_root(poly, p):
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _monic_polys(degree, p):
    """Monic degree-d polynomials in lexicographic order of their low coefficients."""
    for low in _iproduct(range(p), repeat=degree):
        yield low + (1,)


def _is_irreducible(poly, p):
    """Root/factor search; sufficient for degree <= 4."""
    degree = len(poly) - 1
    if degree == 1:
        return True
    if _poly_has_root(poly, p):
        return False
    if degree <= 3:
        return True
    # degree 4: rule out irreducible quadratic divisors
    for quad in _monic_polys(2, p):
        if not _poly_has_root(quad, p) and all(c == 0 for c in _poly_mod(poly, quad, p)):
            return False
    return True


def _least_irreducible(degree, p):
    for cand in _monic_polys(degree, p):
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class FieldElement:
    """An element of a :class:`Field`, identified by its dense index."""

    __slots__ = ("field", "index")

    def __init__(self, field, index):
        self.field = field
        self.index = int(index)

    @property
    def coeffs(self):
        """Polynomial coefficients, constant term first, length f."""
        return self.field.index_to_coeffs(self.index)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("operands belong to different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add_t[self.index, self._coerce(other).index])

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.add_t[self.index, self.field.neg_t[o.index]])

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul_t[self.index, self._coerce(other).index])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.index == 0:
            raise DivisionByZero("division by the zero element")
        return FieldElement(self.field, self.field.mul_t[self.index, self.field.inv_t[o.index]])

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_t[self.index])

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow_index(self.index, e))

    def inverse(self):
        if self.index == 0:
            raise DivisionByZero("zero has no inverse")
        return FieldElement(self.field, self.field.inv_t[self.index])

    def multiplicative_order(self):
        if self.index == 0:
            raise DivisionByZero("zero has no multiplicative order")
        k, cur = 1, self.index
        while cur != 1:
            cur = int(self.field.mul_t[cur, self.index])
            k += 1
        return k

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field is other.field
            and self.index == other.index
        )

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __repr__(self):
        return f"GF({self.field.q})[{self.index}]"

    def __str__(self):
        if self.field.f == 1:
            return str(self.index)
        names = ["1", "x"] + [f"x^{k}" for k in range(2, self.field.f)]
        terms = []
        for k in reversed(range(self.field.f)):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(names[k])
            else:
                terms.append(f"{c}{names[k]}")
        return "+".join(terms) if terms else "0"


class Field:
    """GF(q) with dense element indexing and precomputed operation tables.

    Immutable after construction; see :func:`field_new` for the public
    constructor (instances are cached per q).
    """

    def __init__(self, p, f, modulus=None):
        self.p = p
        self.f = f
        self.q = p**f
        if self.q > MAX_FIELD_ORDER:
            raise CapExceeded(f"field order {self.q} exceeds table cap {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = (0, 1) if f == 1 else _least_irreducible(f, p)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(m % p for m in modulus[:-1]) + (1,)
        self._powers = np.array([p**k for k in range(f)], dtype=np.int64)
        self._build_tables()

    def _build_tables(self):
        p, f, q = self.p, self.f, self.q
        digits = np.empty((q, f), dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        rem = idx.copy()
        for k in range(f):
            digits[:, k] = rem % p
            rem //= p
        self._digits = digits

        self.add_t = ((digits[:, None, :] + digits[None, :, :]) % p) @ self._powers
        self.neg_t = ((-digits) % p) @ self._powers

        if f == 1:
            self.mul_t = np.outer(idx, idx) % p
        else:
            # polynomial product then reduction by the modulus
            conv = np.zeros((q, q, 2 * f - 1), dtype=np.int64)
            for u in range(f):
                for v in range(f):
                    conv[:, :, u + v] += np.outer(digits[:, u], digits[:, v])
            conv %= p
            red = {
                k: np.array(_poly_mod((0,) * k + (1,), self.modulus, p), dtype=np.int64)
                for k in range(f, 2 * f - 1)
            }
            res = conv[:, :, :f].copy()
            for k in range(f, 2 * f - 1):
                vec = np.zeros(f, dtype=np.int64)
                vec[: red[k].shape[0]] = red[k]
                res += conv[:, :, k, None] * vec[None, None, :]
            self.mul_t = (res % p) @ self._powers
        self.mul_t = np.ascontiguousarray(self.mul_t, dtype=np.int64)
        self.add_t = np.ascontiguousarray(self.add_t, dtype=np.int64)

        inv = np.argmax(self.mul_t == 1, axis=1)
        inv[0] = 0  # sentinel; guarded at call sites
        self.inv_t = inv.astype(np.int64)
        # sanity: nonzero elements must all be invertible (modulus irreducible)
        assert (self.mul_t[np.arange(1, q), self.inv_t[1:]] == 1).all()

    # -- element handling ----------------------------------------------------

    def __call__(self, value):
        """Element from an index, an integer residue (f=1 fans out), or coeffs."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.coeffs_to_index(value))
        return FieldElement(self, int(value) % self.p if self.f == 1 else int(value))

    def element(self, index):
        if not 0 <= index < self.q:
            raise ValueError(f"element index {index} out of range for GF({self.q})")
        return FieldElement(self, index)

    def elements(self):
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def index_to_coeffs(self, index):
        out = []
        for _ in range(self.f):
            out.append(index % self.p)
            index //= self.p
        return tuple(out)

    def coeffs_to_index(self, coeffs):
        if len(coeffs) != self.f:
            raise ValueError(f"expected {self.f} coefficients")
        return int(sum((c % self.p) * self.p**k for k, c in enumerate(coeffs)))

    def pow_index(self, index, e):
        """index**e on indices; negative e via the inverse."""
        e = int(e)
        if e < 0:
            if index == 0:
                raise DivisionByZero("zero raised to a negative power")
            index = int(self.inv_t[index])
            e = -e
        acc, base = 1, index
        while e:
            if e & 1:
                acc = int(self.mul_t[acc, base])
            base = int(self.mul_t[base, base])
            e >>= 1
        return acc

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Field(q={self.q}, p={self.p}, f={self.f}, modulus={self.modulus})"


@lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """GF(q) for a prime power q, with the deterministic default modulus."""
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    pk = prime_power_decompose(q)
    if pk is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    p, f = pk
    if f > MAX_EXTENSION_DEGREE:
        raise CapExceeded(f"extension degree {f} > {MAX_EXTENSION_DEGREE} unsupported")
    return Field(p, f)


def field_arith(fld: Field, op: str, a, b=None):
    """Dispatch a named field operation; ``b`` is an exponent for ``pow``."""
    a = fld(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    b = fld(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def primitive_element(fld: Field) -> FieldElement:
    """Least-indexed generator of the multiplicative group."""
    if fld.q < 3:
        raise ValueError("GF(2) has a trivial multiplicative group")
    for idx in range(1, fld.q):
        if FieldElement(fld, idx).multiplicative_order() == fld.q - 1:
            return FieldElement(fld, idx)
    raise AssertionError("multiplicative group must be cyclic")  # cannot happen


__all__ = [
    "Field",
    "FieldElement",
    "field_new",
    "field_arith",
    "primitive_element",
    "is_prime",
]
