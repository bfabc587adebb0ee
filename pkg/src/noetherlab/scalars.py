"""Exact scalar arithmetic over the rationals and over prime fields GF(p).

Every other module is parameterized by a Field: characteristic 0 means
arbitrary-precision rationals (backed by fractions.Fraction), characteristic
p > 0 means residues in [0, p).  Raw coefficient values (int residues or
Fraction) are used inside polynomial arithmetic for speed; Scalar is the
wrapper used at API boundaries and in reports.
"""

from fractions import Fraction


def is_prime(n):
    """Trial-division primality test; adequate for characteristics < 2^31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Descriptor of the coefficient field: GF(p) for prime p, or Q for 0."""

    __slots__ = ("char",)

    def __init__(self, characteristic):
        if not isinstance(characteristic, int) or characteristic < 0:
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic!r}")
        if characteristic != 0 and not is_prime(characteristic):
            raise ValueError(f"{characteristic} is not prime")
        if characteristic >= 1 << 31:
            raise ValueError(f"characteristic {characteristic} exceeds the 2^31 bound")
        object.__setattr__(self, "char", characteristic)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    # -- raw-value arithmetic (int residues for GF(p), Fraction for Q) --

    def of(self, value):
        """Canonical raw value from an int, Fraction, or Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise ValueError(f"scalar from {value.field!r} used in {self!r}")
            return value.value
        p = self.char
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator of {value} vanishes in {self!r}")
                return value.numerator * pow(value.denominator, -1, p) % p
            return value % p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return pow(a, -1, self.char) if self.char else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if not a:
            if e < 0:
                raise ZeroDivisionError(f"zero raised to negative power {e} in {self!r}")
            return self.one if e == 0 else self.zero
        if self.char:
            return pow(a, e, self.char)
        return a ** e

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def scalar(self, value):
        return Scalar(self, self.of(value))

    def format_raw(self, raw):
        """Report form: "a/b" over Q, "r mod p" over GF(p)."""
        return f"{raw} mod {self.char}" if self.char else str(raw)


QQ = Field(0)


def field_make(characteristic):
    """Field descriptor for the given characteristic (0 or a prime)."""
    return Field(characteristic)


class Scalar:
    """Immutable field element in canonical form.

    Canonical means: residue in [0, p) over GF(p); fully reduced Fraction
    with positive denominator over Q.  Two scalars are equal exactly when
    their fields and canonical values coincide.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.of(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"scalar fields differ: {self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.of(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.of(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"Scalar({self.field!r}, {self.value})"

    def __str__(self):
        return str(self.value)

    def report(self):
        """Serialized form used verbatim in check reports."""
        return self.field.format_raw(self.value)

    def multiplicative_order(self, bound=None):
        """Smallest m >= 1 with self^m == 1; searches up to bound if given."""
        if not self.value:
            raise ZeroDivisionError("zero has no multiplicative order")
        limit = bound if bound is not None else (self.field.char or 2)
        acc = self.value
        m = 1
        one = self.field.one
        while m <= limit:
            if acc == one:
                return m
            acc = self.field.mul(acc, self.value)
            m += 1
        raise ValueError(f"{self} has no multiplicative order <= {limit}")


def scalar_arith(op, a, b=None):
    """Dispatch form of the field operations; mainly for table-driven tests."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    table = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
    }
    if op not in table:
        raise ValueError(f"unknown scalar operation {op!r}")
    return table[op](a, b)


def scalar_pow(a, e):
    return a ** e
