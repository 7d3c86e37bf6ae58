"""Exact base fields: the rationals and prime fields F_p.

Elements are immutable ``FieldElement`` values carrying a reference to their
field; all arithmetic is exact (``fractions.Fraction`` over Q, residues mod p
over a prime field).  Extension fields live in :mod:`galdescent.extension`.
"""

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch


class FieldElement:
    """An element of a :class:`Field`.  Arithmetic dispatches to the field."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(self, self.field._neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(other, self.field._neg(self))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(other, self.inverse())

    def __neg__(self):
        return self.field._neg(self)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self):
        return self.field._inv(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return not self.field.is_zero(self)

    def __repr__(self):
        return self.field.format_element(self)


class Field:
    """Common interface for exact fields."""

    def element(self, value):
        return FieldElement(self, value)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a):
        return a.value == self._zero_value()

    # subclasses supply: from_int, _add, _neg, _mul, _inv, _zero_value,
    # characteristic, format_element, and (finite case) order/elements


class RationalField(Field):
    """The field Q, with Fraction values."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    characteristic = 0
    is_finite = False

    def from_int(self, n):
        return FieldElement(self, Fraction(n))

    def from_fraction(self, num, den=1):
        return FieldElement(self, Fraction(num, den))

    def _zero_value(self):
        return Fraction(0)

    def _add(self, a, b):
        return FieldElement(self, a.value + b.value)

    def _neg(self, a):
        return FieldElement(self, -a.value)

    def _mul(self, a, b):
        return FieldElement(self, a.value * b.value)

    def _inv(self, a):
        if a.value == 0:
            raise DivisionByZero("1/0 in QQ")
        return FieldElement(self, 1 / a.value)

    def format_element(self, a):
        return str(a.value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """The field F_p for a prime p, with int values in [0, p)."""

    _cache = {}

    def __new__(cls, p):
        field = cls._cache.get(p)
        if field is None:
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
            field = super().__new__(cls)
            field.p = p
            cls._cache[p] = field
        return field

    is_finite = True

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    def from_int(self, n):
        if isinstance(n, Fraction):
            if n.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return FieldElement(self, n.numerator * pow(n.denominator, -1, self.p) % self.p)
        return FieldElement(self, n % self.p)

    def _zero_value(self):
        return 0

    def _add(self, a, b):
        return FieldElement(self, (a.value + b.value) % self.p)

    def _neg(self, a):
        return FieldElement(self, -a.value % self.p)

    def _mul(self, a, b):
        return FieldElement(self, (a.value * b.value) % self.p)

    def _inv(self, a):
        if a.value == 0:
            raise DivisionByZero(f"1/0 in F_{self.p}")
        return FieldElement(self, pow(a.value, -1, self.p))

    def elements(self):
        for n in range(self.p):
            yield FieldElement(self, n)

    def format_element(self, a):
        return str(a.value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p):
    return PrimeField(p)
