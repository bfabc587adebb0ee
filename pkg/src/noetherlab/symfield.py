"""Sparse multivariate polynomials and rational functions over a Field.

Monomials are packed into single integers: 16 bits per variable exponent,
prefixed by a 16-bit total degree, most significant variable first.  With
that packing, monomial product is integer addition and graded-lex comparison
is integer comparison.  Exponents and total degrees must stay below 2^16.

Rational functions are kept in canonical form at all times: denominator
nonzero and monic in graded-lex order, gcd(numerator, denominator) a unit.
Equality of canonical forms is the equality judgment every checker in this
package relies on, so nothing here ever bypasses normalization except the
substitution fast path for variable permutations (which provably preserves
reducedness).
"""

import re
from fractions import Fraction

from .scalars import Field, Scalar

_BITS = 16
_MASK = (1 << _BITS) - 1


class VariableSpace:
    """Ordered set of variable names with the packed-exponent encoding."""

    __slots__ = ("names", "index", "n", "_degshift")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct, got {names}")
        if not names:
            raise ValueError("a variable space needs at least one variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {name: i for i, name in enumerate(names)})
        object.__setattr__(self, "n", len(names))
        object.__setattr__(self, "_degshift", _BITS * len(names))

    def __setattr__(self, name, value):
        raise AttributeError("VariableSpace is immutable")

    def __eq__(self, other):
        return isinstance(other, VariableSpace) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableSpace({', '.join(self.names)})"

    def key_of(self, exps):
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        key = 0
        total = 0
        for e in exps:
            if e < 0 or e > _MASK:
                raise ValueError(f"exponent {e} outside [0, {_MASK}]")
            total += e
            key = (key << _BITS) | e
        if total > _MASK:
            raise ValueError(f"total degree {total} exceeds {_MASK}")
        return (total << self._degshift) | key

    def exps_of(self, key):
        out = []
        for i in range(self.n - 1, -1, -1):
            out.append((key >> (_BITS * i)) & _MASK)
        return tuple(out)

    def total_degree_of(self, key):
        return key >> self._degshift

    def unit_key(self, i):
        return (1 << self._degshift) | (1 << (_BITS * (self.n - 1 - i)))


def space(*names):
    return VariableSpace(names)


def _check_compatible(a, b):
    if a.space != b.space:
        raise ValueError(f"variable spaces differ: {a.space!r} vs {b.space!r}")
    if a.field != b.field:
        raise ValueError(f"coefficient fields differ: {a.field!r} vs {b.field!r}")


class Polynomial:
    """Sparse polynomial; terms maps packed monomial key -> nonzero raw coeff."""

    __slots__ = ("space", "field", "terms")

    def __init__(self, space, field, terms):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, space, field):
        return cls(space, field, {})

    @classmethod
    def constant(cls, space, field, value):
        raw = field.of(value)
        return cls(space, field, {space.key_of((0,) * space.n): raw} if raw else {})

    @classmethod
    def variable(cls, space, field, name):
        if name not in space.index:
            raise ValueError(f"unknown variable {name!r} in {space!r}")
        return cls(space, field, {space.unit_key(space.index[name]): field.one})

    @classmethod
    def from_terms(cls, space, field, items):
        """items: iterable of (exponent tuple, coefficient)."""
        terms = {}
        for exps, value in items:
            raw = field.of(value)
            key = space.key_of(exps)
            acc = field.add(terms.get(key, field.zero), raw)
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return cls(space, field, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and next(iter(self.terms)) == 0)

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get(0) == self.field.one

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Scalar(self.field, self.terms.get(0, self.field.zero))

    def total_degree(self):
        if not self.terms:
            return -1
        return self.space.total_degree_of(max(self.terms))

    def leading_key(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def leading_coefficient(self):
        return Scalar(self.field, self.terms[self.leading_key()])

    def coefficient(self, exps):
        return Scalar(self.field, self.terms.get(self.space.key_of(exps), self.field.zero))

    def degree_in(self, var_index):
        shift = _BITS * (self.space.n - 1 - var_index)
        deg = 0
        for key in self.terms:
            e = (key >> shift) & _MASK
            if e > deg:
                deg = e
        return deg

    def variables_used(self):
        used = set()
        for key in self.terms:
            exps = self.space.exps_of(key)
            used.update(i for i, e in enumerate(exps) if e)
        return used

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            _check_compatible(self, other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return Polynomial.constant(self.space, self.field, self.field.of(other))
        return None

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        field = self.field
        big, small = (self.terms, o.terms) if len(self.terms) >= len(o.terms) else (o.terms, self.terms)
        out = dict(big)
        for k, c in small.items():
            acc = field.add(out.get(k, field.zero), c)
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return Polynomial(self.space, field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial(self.space, self.field, {k: neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if not a or not b:
            return Polynomial.zero(self.space, self.field)
        shift = self.space._degshift
        if (max(a) >> shift) + (max(b) >> shift) > _MASK:
            raise OverflowError("total degree of product exceeds the packing bound")
        if len(a) < len(b):
            a, b = b, a
        out = {}
        p = self.field.char
        if p:
            for k2, c2 in b.items():
                for k1, c1 in a.items():
                    k = k1 + k2
                    acc = (out.get(k, 0) + c1 * c2) % p
                    if acc:
                        out[k] = acc
                    else:
                        out.pop(k, None)
        else:
            for k2, c2 in b.items():
                for k1, c1 in a.items():
                    k = k1 + k2
                    acc = out.get(k)
                    acc = c1 * c2 if acc is None else acc + c1 * c2
                    if acc:
                        out[k] = acc
                    else:
                        out.pop(k, None)
        return Polynomial(self.space, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"polynomial power needs a nonnegative integer, got {e!r}")
        result = Polynomial.constant(self.space, self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return RationalFunction.of(self) / other

    def __rtruediv__(self, other):
        return other * RationalFunction.of(self).reciprocal()

    def scale(self, value):
        raw = self.field.of(value)
        if not raw:
            return Polynomial.zero(self.space, self.field)
        mul = self.field.mul
        return Polynomial(self.space, self.field, {k: mul(c, raw) for k, c in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        lc = self.terms[self.leading_key()]
        if lc == self.field.one:
            return self
        return self.scale(self.field.inv(lc))

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.space, self.field, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.space.names
        parts = []
        for key in sorted(self.terms, reverse=True):
            exps = self.space.exps_of(key)
            coeff = self.terms[key]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(names[i])
                elif e:
                    factors.append(f"{names[i]}^{e}")
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"<poly {self} over {self.field!r}>"


def variables(space_, field):
    """The generators of space_ as polynomials over field, in order."""
    return [Polynomial.variable(space_, field, name) for name in space_.names]


def poly_product(factors, space_=None, field=None):
    """Product of polynomials, smallest operand first to limit growth."""
    factors = list(factors)
    if not factors:
        if space_ is None or field is None:
            raise ValueError("empty product needs an explicit space and field")
        return Polynomial.constant(space_, field, 1)
    acc = None
    for f in sorted(factors, key=lambda p: len(p.terms)):
        acc = f if acc is None else acc * f
    return acc


# -- gcd machinery -----------------------------------------------------------


def _divexact(a, b):
    """Exact quotient a/b; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_one():
        return a
    space_, field = a.space, a.field
    bl = b.leading_key()
    bl_exps = space_.exps_of(bl)
    blc = b.terms[bl]
    rem = dict(a.terms)
    out = {}
    while rem:
        al = max(rem)
        al_exps = space_.exps_of(al)
        q_exps = tuple(x - y for x, y in zip(al_exps, bl_exps))
        if any(e < 0 for e in q_exps):
            raise ValueError("not an exact polynomial division")
        qk = space_.key_of(q_exps)
        qc = field.div(rem[al], blc)
        out[qk] = qc
        for k2, c2 in b.terms.items():
            k = qk + k2
            acc = field.sub(rem.get(k, field.zero), field.mul(qc, c2))
            if acc:
                rem[k] = acc
            else:
                rem.pop(k, None)
    return Polynomial(space_, field, out)


def _monomial_content_key(p):
    """Largest monomial key dividing every term of p."""
    mins = None
    for key in p.terms:
        exps = p.space.exps_of(key)
        mins = exps if mins is None else tuple(map(min, mins, exps))
        if not any(mins):
            return 0
    return p.space.key_of(mins)


def _shift_down(p, mono_key):
    if mono_key == 0:
        return p
    return Polynomial(p.space, p.field, {k - mono_key: c for k, c in p.terms.items()})


def _univariate_view(p, var_index):
    """Map v-degree -> coefficient polynomial (v-exponent stripped)."""
    space_ = p.space
    shift = _BITS * (space_.n - 1 - var_index)
    unit = space_.unit_key(var_index)
    view = {}
    for key, c in p.terms.items():
        e = (key >> shift) & _MASK
        view.setdefault(e, {})[key - e * unit] = c
    return {e: Polynomial(space_, p.field, terms) for e, terms in view.items()}


def _from_view(space_, field, view, var_index):
    unit = space_.unit_key(var_index)
    terms = {}
    for e, coeff in view.items():
        for k, c in coeff.terms.items():
            terms[k + e * unit] = c
    return Polynomial(space_, field, terms)


def _content_and_primitive(p, var_index):
    """Content (gcd of v-coefficients) and primitive part of p w.r.t. v."""
    view = _univariate_view(p, var_index)
    coeffs = sorted(view.values(), key=lambda c: len(c.terms))
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant():
            break
        cont = poly_gcd(cont, c)
    cont = cont.monic()
    if cont.is_one():
        return cont, p
    return cont, _divexact(p, cont)


def _view_prem(f_view, g_view, space_, field):
    """Pseudo-remainder on univariate views {deg: coefficient polynomial}."""
    dg = max(g_view)
    lg = g_view[dg]
    while f_view:
        df = max(f_view)
        if df < dg:
            break
        lf = f_view.pop(df)
        out = {e: lg * c for e, c in f_view.items()}
        for e, c in g_view.items():
            if e == dg:
                continue
            e2 = e + df - dg
            prev = out.get(e2)
            term = lf * c
            acc = -term if prev is None else prev - term
            if acc.is_zero():
                out.pop(e2, None)
            else:
                out[e2] = acc
        f_view = out
    return f_view


def _divides_quickly(d, p):
    """d | p decided by attempted division; None means 'gave up'."""
    try:
        return _divexact(p, d)
    except ValueError:
        return None


def _primitive_from_view(view, space_, field, v):
    """Primitive part (w.r.t. v) of a polynomial given as a univariate view."""
    coeffs = sorted(view.values(), key=lambda c: len(c.terms))
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_constant():
            break
        cont = poly_gcd(cont, c)
    if cont.is_constant():
        return view
    return {e: _divexact(c, cont) for e, c in view.items()}


def poly_gcd(a, b):
    """Monic gcd of two polynomials over a field.

    Strips monomial content, tries mutual exact division, then runs a
    primitive PRS in the highest shared variable; taking primitive parts at
    every remainder step keeps the degrees in the other variables down,
    which matters more here than the cost of the content gcds.
    """
    _check_compatible(a, b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    space_, field = a.space, a.field
    ma = _monomial_content_key(a)
    mb = _monomial_content_key(b)
    common = tuple(map(min, space_.exps_of(ma), space_.exps_of(mb)))
    common_key = space_.key_of(common)
    a = _shift_down(a, ma)
    b = _shift_down(b, mb)
    mono = Polynomial(space_, field, {common_key: field.one})
    if a.is_monomial() or b.is_monomial():
        return mono
    shared = a.variables_used() & b.variables_used()
    if not shared:
        return mono
    small, large = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    if _divides_quickly(small, large) is not None:
        return (mono * small).monic()
    v = max(shared)
    cont_a, pp_a = _content_and_primitive(a, v)
    cont_b, pp_b = _content_and_primitive(b, v)
    cont = poly_gcd(cont_a, cont_b)
    f_view = _univariate_view(pp_a, v)
    g_view = _univariate_view(pp_b, v)
    if max(f_view) < max(g_view):
        f_view, g_view = g_view, f_view
    while True:
        r_view = _view_prem(dict(f_view), g_view, space_, field)
        if not r_view:
            pp = _from_view(space_, field, g_view, v)
            break
        if max(r_view) == 0:
            pp = Polynomial.constant(space_, field, 1)
            break
        f_view, g_view = g_view, _primitive_from_view(r_view, space_, field, v)
    _, pp = _content_and_primitive(pp, v)
    return (mono * cont * pp).monic()


# -- rational functions -------------------------------------------------------


class RationalFunction:
    """Canonical fraction of polynomials: reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        _check_compatible(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num = Polynomial.zero(num.space, num.field)
            den = Polynomial.constant(num.space, num.field, 1)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = _divexact(num, g)
                den = _divexact(den, g)
            lc = den.terms[den.leading_key()]
            if lc != den.field.one:
                inv = den.field.inv(lc)
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _trusted(cls, num, den):
        """Wrap an already-reduced pair, normalizing only the leading coeff."""
        lc = den.terms[den.leading_key()]
        if lc != den.field.one:
            inv = den.field.inv(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def of(cls, value, space_=None, field=None):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls._trusted(value, Polynomial.constant(value.space, value.field, 1))
        if space_ is None or field is None:
            raise ValueError("constants need an explicit space and field")
        return cls._trusted(Polynomial.constant(space_, field, field.of(value)),
                            Polynomial.constant(space_, field, 1))

    @property
    def space(self):
        return self.num.space

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def is_monomial(self):
        return self.num.is_monomial() and self.den.is_monomial()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            _check_compatible(self.num, other.num)
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.of(other)
        if isinstance(other, (int, Fraction, Scalar)):
            return RationalFunction.of(other, self.space, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, self.den
        c, d = o.num, o.den
        if b == d:
            t = a + c
            if t.is_zero():
                return RationalFunction.of(0, self.space, self.field)
            g = poly_gcd(t, b)
            if g.is_one():
                return RationalFunction._trusted(t, b)
            return RationalFunction._trusted(_divexact(t, g), _divexact(b, g))
        g0 = poly_gcd(b, d)
        if g0.is_one():
            return RationalFunction._trusted(a * d + c * b, b * d)
        b1 = _divexact(b, g0)
        d1 = _divexact(d, g0)
        t = a * d1 + c * b1
        if t.is_zero():
            return RationalFunction.of(0, self.space, self.field)
        g1 = poly_gcd(t, g0)
        if g1.is_one():
            return RationalFunction._trusted(t, b1 * d)
        return RationalFunction._trusted(_divexact(t, g1), b1 * _divexact(d, g1))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, self.den
        c, d = o.num, o.den
        if a.is_zero() or c.is_zero():
            return RationalFunction.of(0, self.space, self.field)
        g1 = poly_gcd(a, d)
        if not g1.is_one():
            a = _divexact(a, g1)
            d = _divexact(d, g1)
        g2 = poly_gcd(c, b)
        if not g2.is_one():
            c = _divexact(c, g2)
            b = _divexact(b, g2)
        return RationalFunction._trusted(a * c, b * d)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RationalFunction._trusted(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError(f"rational function power needs an integer, got {e!r}")
        if e < 0:
            return self.reciprocal() ** (-e)
        if e == 0:
            return RationalFunction.of(1, self.space, self.field)
        # powers of a reduced fraction are reduced; no gcd needed
        return RationalFunction._trusted(self.num ** e, self.den ** e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"<ratfunc {self} over {self.field!r}>"


def monomial_exponents(rf):
    """Laurent exponent vector of a monomial rational function.

    Raises if rf is not a (scalar multiple of a) single monomial; lattice
    degree counting is only meaningful for monomial generators.
    """
    rf = RationalFunction.of(rf)
    if rf.is_zero():
        raise ValueError("zero is not a monomial")
    if not rf.is_monomial():
        raise ValueError(f"not a monomial: {rf}")
    num_exps = rf.space.exps_of(next(iter(rf.num.terms)))
    den_exps = rf.space.exps_of(next(iter(rf.den.terms)))
    return tuple(a - b for a, b in zip(num_exps, den_exps))


# -- substitution maps --------------------------------------------------------

PERMUTATION = "permutation"
TWISTED = "twisted-permutation"
MONOMIAL = "monomial"
AFFINE = "affine"
GENERAL = "general"


class SubstitutionMap:
    """Field endomorphism given by one rational-function image per variable.

    The kind tag records the strongest structure the images satisfy, and
    selects a fast application path.  Permutation and twisted-permutation
    maps are automorphisms, so they preserve reduced fractions and skip gcd
    work entirely.
    """

    __slots__ = ("space", "field", "images", "kind", "_perm", "_scales",
                 "_mono", "_inverse")

    def __init__(self, space, field, images, inverse=None):
        images = tuple(RationalFunction.of(im, space, field) for im in images)
        if len(images) != space.n:
            raise ValueError(f"expected {space.n} images, got {len(images)}")
        for im in images:
            if im.space != space or im.field != field:
                raise ValueError("image outside the map's space or field")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "images", images)
        self._classify()
        object.__setattr__(self, "_inverse", inverse)
        if inverse is not None:
            ident = SubstitutionMap.identity(space, field)
            if self.compose(inverse) != ident or inverse.compose(self) != ident:
                raise ValueError("declared inverse does not invert the map")

    def __setattr__(self, name, value):
        raise AttributeError("SubstitutionMap is immutable")

    def _classify(self):
        space_, field = self.space, self.field
        one = field.one
        perm = []
        scales = []
        monos = []
        poly_deg1 = True
        for im in self.images:
            if im.den.is_one() and im.num.total_degree() <= 1:
                pass
            else:
                poly_deg1 = False
            if im.is_monomial() and not im.is_zero():
                nk = next(iter(im.num.terms))
                dk = next(iter(im.den.terms))
                coeff = field.div(im.num.terms[nk], im.den.terms[dk])
                exps = tuple(a - b for a, b in
                             zip(space_.exps_of(nk), space_.exps_of(dk)))
                monos.append((coeff, exps))
                if sum(exps) == 1 and all(e in (0, 1) for e in exps):
                    perm.append(exps.index(1))
                    scales.append(coeff)
                else:
                    perm.append(None)
                    scales.append(None)
            else:
                monos.append(None)
                perm.append(None)
                scales.append(None)
        kind = GENERAL
        if all(i is not None for i in perm) and sorted(perm) == list(range(space_.n)):
            kind = PERMUTATION if all(s == one for s in scales) else TWISTED
        elif all(m is not None for m in monos):
            kind = MONOMIAL
        elif poly_deg1:
            kind = AFFINE
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "_perm", tuple(perm) if kind in (PERMUTATION, TWISTED) else None)
        object.__setattr__(self, "_scales", tuple(scales) if kind == TWISTED else None)
        object.__setattr__(self, "_mono", tuple(monos) if kind == MONOMIAL else None)

    @classmethod
    def identity(cls, space, field):
        return cls(space, field,
                   [Polynomial.variable(space, field, n) for n in space.names])

    @classmethod
    def from_images(cls, space, field, image_by_name, inverse=None):
        """Build from a {variable name: image} mapping; omitted names are fixed."""
        images = []
        unknown = set(image_by_name) - set(space.names)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        for name in space.names:
            if name in image_by_name:
                images.append(RationalFunction.of(image_by_name[name], space, field))
            else:
                images.append(RationalFunction.of(
                    Polynomial.variable(space, field, name)))
        return cls(space, field, images, inverse=inverse)

    def image_of(self, name):
        return self.images[self.space.index[name]]

    # -- application --------------------------------------------------------

    def _apply_poly_perm(self, p):
        space_, field = self.space, self.field
        perm = self._perm
        scales = self._scales
        n = space_.n
        out = {}
        for key, c in p.terms.items():
            exps = space_.exps_of(key)
            new = [0] * n
            coeff = c
            for i, e in enumerate(exps):
                if e:
                    new[perm[i]] = e
                    if scales is not None:
                        coeff = field.mul(coeff, field.pow(scales[i], e))
            if coeff:
                k = space_.key_of(new)
                acc = field.add(out.get(k, field.zero), coeff)
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        return Polynomial(space_, field, out)

    def _apply_poly_monomial(self, p):
        """Image of a polynomial as (numerator polynomial, monomial key)."""
        space_, field = self.space, self.field
        mono = self._mono
        n = space_.n
        acc = {}
        for key, c in p.terms.items():
            exps = space_.exps_of(key)
            vec = [0] * n
            coeff = c
            for i, e in enumerate(exps):
                if e:
                    mc, mexps = mono[i]
                    coeff = field.mul(coeff, field.pow(mc, e))
                    for j, me in enumerate(mexps):
                        if me:
                            vec[j] += me * e
            if coeff:
                vkey = tuple(vec)
                total = field.add(acc.get(vkey, field.zero), coeff)
                if total:
                    acc[vkey] = total
                else:
                    acc.pop(vkey, None)
        if not acc:
            return Polynomial.zero(space_, field), space_.key_of((0,) * n)
        mins = [0] * n
        for vec in acc:
            for j, e in enumerate(vec):
                if e < mins[j]:
                    mins[j] = e
        terms = {}
        for vec, c in acc.items():
            terms[space_.key_of(tuple(e - m for e, m in zip(vec, mins)))] = c
        den_key = space_.key_of(tuple(-m for m in mins))
        return Polynomial(space_, field, terms), den_key

    def _apply_poly_general(self, p):
        space_, field = self.space, self.field
        result = RationalFunction.of(0, space_, field)
        pow_cache = {}
        for key, c in p.terms.items():
            exps = space_.exps_of(key)
            term = RationalFunction.of(c, space_, field)
            for i, e in enumerate(exps):
                if e:
                    cached = pow_cache.get((i, e))
                    if cached is None:
                        cached = self.images[i] ** e
                        pow_cache[(i, e)] = cached
                    term = term * cached
            result = result + term
        return result

    def apply_poly(self, p):
        """Image of a polynomial; only valid for kinds with polynomial images."""
        if self.kind in (PERMUTATION, TWISTED):
            return self._apply_poly_perm(p)
        if self.kind == AFFINE or all(im.den.is_one() for im in self.images):
            space_, field = self.space, self.field
            result = Polynomial.zero(space_, field)
            pow_cache = {}
            for key, c in p.terms.items():
                exps = space_.exps_of(key)
                term = Polynomial.constant(space_, field, c)
                for i, e in enumerate(exps):
                    if e:
                        cached = pow_cache.get((i, e))
                        if cached is None:
                            cached = self.images[i].num ** e
                            pow_cache[(i, e)] = cached
                        term = term * cached
                result = result + term
            return result
        raise ValueError(f"{self.kind} map does not send polynomials to polynomials")

    def apply(self, f):
        """Image of f under the field endomorphism extending the images."""
        if isinstance(f, Polynomial):
            f = RationalFunction.of(f)
        if f.space != self.space or f.field != self.field:
            raise ValueError("map and argument live in different spaces or fields")
        kind = self.kind
        if kind in (PERMUTATION, TWISTED):
            return RationalFunction._trusted(self._apply_poly_perm(f.num),
                                             self._apply_poly_perm(f.den))
        if kind == MONOMIAL:
            num, num_shift = self._apply_poly_monomial(f.num)
            den, den_shift = self._apply_poly_monomial(f.den)
            if den.is_zero():
                raise ZeroDivisionError(
                    f"denominator {f.den} vanishes under the substitution")
            space_, field = self.space, self.field
            num_mono = Polynomial(space_, field, {den_shift: field.one})
            den_mono = Polynomial(space_, field, {num_shift: field.one})
            return RationalFunction(num * num_mono, den * den_mono)
        if kind == AFFINE:
            num = self.apply_poly(f.num)
            den = self.apply_poly(f.den)
            if den.is_zero():
                raise ZeroDivisionError(
                    f"denominator {f.den} vanishes under the substitution")
            return RationalFunction(num, den)
        num = self._apply_poly_general(f.num)
        den = self._apply_poly_general(f.den)
        if den.is_zero():
            raise ZeroDivisionError(
                f"denominator {f.den} vanishes under the substitution")
        return num / den

    # -- algebra -------------------------------------------------------------

    def compose(self, other):
        """Map sending each variable v to self(other(v)): apply other first."""
        if other.space != self.space or other.field != self.field:
            raise ValueError("composed maps live in different spaces or fields")
        return SubstitutionMap(self.space, self.field,
                               [self.apply(im) for im in other.images])

    def inverse(self):
        if self._inverse is not None:
            return self._inverse
        if self.kind == PERMUTATION:
            inv = [None] * self.space.n
            for i, j in enumerate(self._perm):
                inv[j] = Polynomial.variable(self.space, self.field,
                                             self.space.names[i])
            return SubstitutionMap(self.space, self.field, inv)
        if self.kind == TWISTED:
            inv = [None] * self.space.n
            for i, j in enumerate(self._perm):
                var = Polynomial.variable(self.space, self.field,
                                          self.space.names[i])
                inv[j] = var.scale(self.field.inv(self._scales[i]))
            return SubstitutionMap(self.space, self.field, inv)
        raise ValueError(f"cannot invert a {self.kind} map without a declared inverse")

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("map power needs an integer exponent")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = SubstitutionMap.identity(self.space, self.field)
        while e:
            if e & 1:
                result = result.compose(base)
            e >>= 1
            if e:
                base = base.compose(base)
        return result

    def __eq__(self, other):
        if not isinstance(other, SubstitutionMap):
            return NotImplemented
        return (self.space == other.space and self.field == other.field
                and self.images == other.images)

    def __hash__(self):
        return hash((self.space, self.field, self.images))

    def __repr__(self):
        body = ", ".join(f"{n} -> {im}" for n, im in zip(self.space.names, self.images)
                         if str(im) != n)
        return f"<subst[{self.kind}] {body or 'identity'}>"


def is_fixed(m, f):
    """(True, None) if m fixes f; otherwise (False, f - m(f))."""
    f = RationalFunction.of(f)
    g = m.apply(f)
    if g == f:
        return True, None
    return False, f - g


def eigen_factor(m, f):
    """The scalar c with m(f) == c*f, or None if f is not an eigenvector."""
    f = RationalFunction.of(f)
    if f.is_zero():
        raise ValueError("zero has no eigenfactor")
    g = m.apply(f)
    if g.is_zero():
        return None
    quotient = g / f
    if quotient.is_constant():
        return quotient.constant_value()
    return None


# -- characters ---------------------------------------------------------------


class Character:
    """Group character given on generators, with a declared order."""

    __slots__ = ("field", "values", "order")

    def __init__(self, field, values, order):
        vals = {}
        for name, v in values.items():
            s = v if isinstance(v, Scalar) else Scalar(field, v)
            if s.field != field:
                raise ValueError(f"character value for {name!r} lies outside {field!r}")
            if not s:
                raise ValueError(f"character value for {name!r} is zero")
            vals[name] = s
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"character order must be a positive integer, got {order!r}")
        for name, s in vals.items():
            if s ** order != field.scalar(1):
                raise ValueError(
                    f"character value {s.report()} for {name!r} does not satisfy "
                    f"value^{order} = 1")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def __call__(self, name):
        if name not in self.values:
            raise ValueError(f"character not defined on generator {name!r}")
        return self.values[name]

    def evaluate_word(self, word):
        """Value on a word like "tau^6" or "sigma*tau^-1"; '*' or spaces split."""
        result = self.field.scalar(1)
        for token in re.split(r"[*\s]+", word.strip()):
            if not token:
                continue
            if "^" in token:
                name, _, exp = token.partition("^")
                e = int(exp)
            else:
                name, e = token, 1
            result = result * (self(name) ** e)
        return result

    def power(self, a):
        return Character(self.field, {n: v ** a for n, v in self.values.items()},
                         self.order)

    def exact_order(self):
        """lcm of the multiplicative orders of the generator values."""
        from math import lcm
        m = 1
        for v in self.values.values():
            m = lcm(m, v.multiplicative_order(bound=self.order))
        return m

    def is_trivial(self):
        one = self.field.scalar(1)
        return all(v == one for v in self.values.values())


def character_check(chi, relations, d=None):
    """True iff chi^d is trivial and chi evaluates to 1 on every relation word."""
    d = chi.order if d is None else d
    if not chi.power(d).is_trivial():
        return False
    one = chi.field.scalar(1)
    return all(chi.evaluate_word(w) == one for w in relations)


# -- text form ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ExpressionError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Parser:
    def __init__(self, text, space, field):
        self.text = text
        self.space = space
        self.field = field
        self.pos = 0
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip():
                    raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
                break
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        value = self.sum()
        kind, text, at = self.peek()
        if kind is not None:
            raise ExpressionError(f"unexpected trailing {text!r}", at)
        return value

    def sum(self):
        value = self.product()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                rhs = self.product()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def product(self):
        value = self.factor()
        while True:
            kind, text, at = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                rhs = self.factor()
                if text == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ExpressionError("division by zero", at)
                    value = value / rhs
            else:
                return value

    def factor(self):
        kind, text, at = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return -self.factor()
        value = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.next()
            sign = 1
            kind, text, at = self.peek()
            if kind == "op" and text == "-":
                self.next()
                sign = -1
                kind, text, at = self.peek()
            if kind != "int":
                raise ExpressionError("exponent must be an integer", at)
            self.next()
            value = value ** (sign * int(text))
        return value

    def atom(self):
        kind, text, at = self.next()
        if kind == "int":
            return RationalFunction.of(int(text), self.space, self.field)
        if kind == "name":
            if text not in self.space.index:
                raise ExpressionError(f"unknown variable {text!r}", at)
            return RationalFunction.of(Polynomial.variable(self.space, self.field, text))
        if kind == "op" and text == "(":
            value = self.sum()
            kind, text, at = self.next()
            if kind != "op" or text != ")":
                raise ExpressionError("expected ')'", at)
            return value
        raise ExpressionError(f"unexpected {text!r}" if text else "unexpected end of input", at)


def parse_expression(text, space, field):
    """Parse the printed form of polynomials and rational functions back."""
    return _Parser(text, space, field).parse()
