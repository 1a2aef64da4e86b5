"""Field tower descriptors, exact element arithmetic, squares and places.

Supported kinds, all of residue characteristic != 2:

* ``finite``   -- F_q, q = p^d odd; extensions carry an explicit monic
  irreducible modulus (chosen canonically for ``finite_field(p, d)``).
  Element data: int in [0, p) for the prime field, else a tuple of
  subfield data (a residue-class polynomial of degree < d).
* ``padic``    -- Q_p, p odd.  Element data: ``fractions.Fraction``,
  read p-adically.  No precision parameter exists anywhere.
* ``laurent``  -- base((t)).  Element data: finite Laurent polynomials,
  tuples of (exponent, coefficient-data) ascending with nonzero
  coefficients.  These represent elements of the complete field, and all
  predicates (valuation, residue, squareness) use complete-field
  semantics.  Division is closed only for single-term units.
* ``ratfun``   -- F_q(x).  Element data: (numerator, denominator)
  coefficient tuples, denominator monic, fraction reduced.
* ``twovar``   -- F_q(x1, x2), stored as fractions in x2 with
  coefficients in F_q(x1).  Used by the local-global machinery.

All element data are plain hashable Python values; ``Elem`` is a thin
wrapper carrying the owning descriptor.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .errors import (
    CompositeP,
    DivisionByZero,
    DivisionUnrepresentable,
    EvenCharacteristic,
    InfiniteSquareClassGroup,
    MixedFields,
    NotAUnit,
    UnsupportedField,
    ZeroElement,
    ZeroPolynomial,
)

INF = math.inf


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Profile:
    """Cached invariants of a field: u, m, A_i(2) index, square classes.

    ``m_invariant`` is None when not determined by the supported theory.
    Infinite counts use ``math.inf``.
    """

    u_invariant: object
    m_invariant: object
    a2_index: object
    square_class_count: object


_INTERN = {}


class FieldDesc:
    """Immutable, interned descriptor of a supported field."""

    __slots__ = (
        "kind", "p", "deg", "modulus", "subfield", "base", "var", "var2",
        "_profile", "_coeff_field", "_gen_name",
    )

    def __new__(cls, key):
        if key in _INTERN:
            return _INTERN[key]
        self = super().__new__(cls)
        kind, *rest = key
        self.kind = kind
        self.p = self.deg = self.modulus = self.subfield = None
        self.base = self.var = self.var2 = None
        self._profile = None
        self._coeff_field = None
        self._gen_name = None
        if self.kind == "finite":
            self.p, self.deg, self.modulus, self.subfield = rest
        elif self.kind == "padic":
            (self.p,) = rest
        elif self.kind == "laurent":
            self.base, self.var = rest
        elif self.kind == "ratfun":
            self.base, self.var = rest
        elif self.kind == "twovar":
            self.base, self.var, self.var2 = rest
        else:
            raise UnsupportedField(self.kind)
        _INTERN[key] = self
        return self

    # -- structure ---------------------------------------------------------

    @property
    def char(self):
        if self.kind in ("finite", "padic"):
            return self.p
        return self.base.char

    @property
    def order(self):
        if self.kind != "finite":
            raise UnsupportedField("order of an infinite field")
        if self.subfield is None:
            return self.p
        return self.subfield.order**self.deg

    @property
    def coeff_field(self):
        """Coefficient field of the fraction representation."""
        if self.kind == "ratfun":
            return self.base
        if self.kind == "twovar":
            if self._coeff_field is None:
                self._coeff_field = rational_function_field(self.base, self.var)
            return self._coeff_field
        raise UnsupportedField(self.kind)

    def var_names(self):
        if self.kind == "finite":
            out = set() if self.subfield is None else set(self.subfield.var_names())
            if self.subfield is not None:
                out.add(self._gen_name or "w")
            return out
        if self.kind == "padic":
            return set()
        if self.kind == "twovar":
            return {self.var, self.var2}
        return {self.var} | self.base.var_names()

    def __repr__(self):
        return f"FieldDesc({self})"

    def __str__(self):
        if self.kind == "finite":
            if self.subfield is None:
                return f"F({self.p})"
            if self.subfield.kind == "finite" and self.subfield.subfield is None:
                return f"F({self.p},{self.deg})"
            return f"EXT({self.subfield};deg {self.deg})"
        if self.kind == "padic":
            return f"Qp({self.p})"
        if self.kind == "laurent":
            return f"LS({self.base};{self.var})"
        if self.kind == "ratfun":
            return f"RF({self.base};{self.var})"
        return f"TwoVar({self.base};{self.var},{self.var2})"

    # -- profile -----------------------------------------------------------

    @property
    def profile(self):
        if self._profile is not None:
            return self._profile
        if self.kind == "finite":
            prof = Profile(2, 2, 1, 2)
        elif self.kind == "padic":
            prof = Profile(4, 4, 2, 4)
        elif self.kind == "laurent":
            b = self.base.profile
            m = None if b.m_invariant is None else 2 * b.m_invariant
            prof = Profile(2 * b.u_invariant, m, b.a2_index + 1,
                           2 * b.square_class_count)
        elif self.kind == "ratfun":
            prof = Profile(4, 4, 2, INF)
        else:  # twovar: u known exactly, m not determined here
            prof = Profile(8, None, 3, INF)
        self._profile = prof
        return prof

    # -- data-level arithmetic ---------------------------------------------

    def dzero(self):
        k = self.kind
        if k == "finite":
            return 0 if self.subfield is None else ()
        if k == "padic":
            return Fraction(0)
        if k == "laurent":
            return ()
        return ((), (self.coeff_field.done(),))

    def done(self):
        k = self.kind
        if k == "finite":
            return 1 if self.subfield is None else (self.subfield.done(),)
        if k == "padic":
            return Fraction(1)
        if k == "laurent":
            return ((0, self.base.done()),)
        one = self.coeff_field.done()
        return ((one,), (one,))

    def dis_zero(self, a):
        k = self.kind
        if k == "finite":
            return a == 0 if self.subfield is None else not a
        if k == "padic":
            return a == 0
        if k == "laurent":
            return not a
        return not a[0]

    def dfrom_int(self, n):
        k = self.kind
        if k == "finite":
            if self.subfield is None:
                return n % self.p
            s = self.subfield.dfrom_int(n)
            return () if self.subfield.dis_zero(s) else (s,)
        if k == "padic":
            return Fraction(n)
        if k == "laurent":
            c = self.base.dfrom_int(n)
            return () if self.base.dis_zero(c) else ((0, c),)
        F = self.coeff_field
        c = F.dfrom_int(n)
        return (polys.pconst(F, c), (F.done(),))

    def dadd(self, a, b):
        k = self.kind
        if k == "finite":
            if self.subfield is None:
                return (a + b) % self.p
            return polys.padd(self.subfield, a, b)
        if k == "padic":
            return a + b
        if k == "laurent":
            return _laurent_add(self.base, a, b)
        return _frac_add(self.coeff_field, a, b)

    def dneg(self, a):
        k = self.kind
        if k == "finite":
            if self.subfield is None:
                return (-a) % self.p
            return polys.pneg(self.subfield, a)
        if k == "padic":
            return -a
        if k == "laurent":
            return tuple((e, self.base.dneg(c)) for e, c in a)
        F = self.coeff_field
        return (polys.pneg(F, a[0]), a[1])

    def dsub(self, a, b):
        return self.dadd(a, self.dneg(b))

    def dmul(self, a, b):
        k = self.kind
        if k == "finite":
            if self.subfield is None:
                return (a * b) % self.p
            return polys.pmod(self.subfield, polys.pmul(self.subfield, a, b),
                              self.modulus)
        if k == "padic":
            return a * b
        if k == "laurent":
            return _laurent_mul(self.base, a, b)
        return _frac_mul(self.coeff_field, a, b)

    def dinv(self, a):
        k = self.kind
        if self.dis_zero(a):
            raise DivisionByZero(str(self))
        if k == "finite":
            if self.subfield is None:
                return pow(a, self.p - 2, self.p)
            g, s, _ = polys.pxgcd(self.subfield, a, self.modulus)
            if polys.pdeg(g) != 0:
                raise DivisionByZero("modulus not irreducible")
            return polys.pmod(self.subfield, s, self.modulus)
        if k == "padic":
            return 1 / a
        if k == "laurent":
            if len(a) != 1:
                raise DivisionUnrepresentable(
                    "finite Laurent polynomials divide only by single-term units")
            e, c = a[0]
            return ((-e, self.base.dinv(c)),)
        F = self.coeff_field
        num, den = a
        lead, monic_num = polys.pmonic(F, num)
        return _frac_norm(F, polys.pscale(F, F.dinv(lead), den), monic_num)

    def ddiv(self, a, b):
        return self.dmul(a, self.dinv(b))

    def dpow(self, a, n):
        if n < 0:
            return self.dpow(self.dinv(a), -n)
        out = self.done()
        base = a
        while n:
            if n & 1:
                out = self.dmul(out, base)
            base = self.dmul(base, base)
            n >>= 1
        return out

    def deq(self, a, b):
        return a == b

    # finite-field extras used by factorization

    def drandom(self, rng):
        if self.kind != "finite":
            raise UnsupportedField("random elements of an infinite field")
        if self.subfield is None:
            return rng.randrange(self.p)
        return polys.pnorm(self.subfield,
                           [self.subfield.drandom(rng) for _ in range(self.deg)])

    def delements(self):
        """Deterministic enumeration of all field elements."""
        if self.kind != "finite":
            raise UnsupportedField("cannot enumerate an infinite field")
        if self.subfield is None:
            yield from range(self.p)
            return
        subs = list(self.subfield.delements())
        idx = [0] * self.deg
        total = len(subs) ** self.deg
        for counter in range(total):
            n = counter
            for i in range(self.deg):
                idx[i] = n % len(subs)
                n //= len(subs)
            yield polys.pnorm(self.subfield, [subs[i] for i in idx])

    def dsort_key(self, a):
        if self.kind != "finite":
            raise UnsupportedField("sort key")
        if self.subfield is None:
            return (0, a)
        return (len(a), tuple(self.subfield.dsort_key(c) for c in a))

    # -- element construction ----------------------------------------------

    def zero(self):
        return Elem(self, self.dzero())

    def one(self):
        return Elem(self, self.done())

    def from_int(self, n):
        return Elem(self, self.dfrom_int(n))

    def gen(self):
        """Distinguished generator of the outermost layer."""
        k = self.kind
        if k == "laurent":
            return Elem(self, ((1, self.base.done()),))
        if k == "ratfun":
            F = self.base
            return Elem(self, ((F.dzero(), F.done()), (F.done(),)))
        if k == "twovar":
            F = self.coeff_field
            return Elem(self, ((F.dzero(), F.done()), (F.done(),)))
        if k == "finite" and self.subfield is not None:
            return Elem(self, (self.subfield.dzero(), self.subfield.done()))
        raise UnsupportedField(f"{self} has no generator")

    def embed_base(self, data):
        """Embed base/coefficient-field data as a constant of this field."""
        k = self.kind
        if k == "laurent":
            return () if self.base.dis_zero(data) else ((0, data),)
        if k in ("ratfun", "twovar"):
            F = self.coeff_field
            return (polys.pconst(F, data), (F.done(),))
        if k == "finite" and self.subfield is not None:
            return () if self.subfield.dis_zero(data) else (data,)
        raise UnsupportedField(self.kind)

    def generators(self):
        """Name -> Elem map of every named generator in the tower."""
        k = self.kind
        out = {}
        if k == "finite":
            if self.subfield is not None and self.subfield.subfield is None:
                out["w"] = self.gen()
            return out
        if k == "padic":
            return out
        if k == "twovar":
            F = self.coeff_field
            out[self.var2] = self.gen()
            out[self.var] = Elem(self, self.embed_base(F.gen().data))
            for name, e in self.base.generators().items():
                out[name] = Elem(self, self.embed_base(F.embed_base(e.data)))
            return out
        out[self.var] = self.gen()
        for name, e in self.base.generators().items():
            out[name] = Elem(self, self.embed_base(e.data))
        return out


# ---------------------------------------------------------------------------
# constructors


def finite_field(p, d=1, modulus=None):
    """F_{p^d} with a canonical (or given) modulus over the prime field."""
    if not _is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is unsupported")
    if d < 1:
        raise ZeroPolynomial("extension degree must be >= 1")
    if d == 1:
        return FieldDesc(("finite", p, 1, None, None))
    prime = finite_field(p)
    if modulus is None:
        modulus = polys.min_irreducible(prime, d)
    else:
        modulus = polys.pnorm(prime, modulus)
        if polys.pdeg(modulus) != d or not polys.is_irreducible(prime, modulus):
            raise ZeroPolynomial("modulus must be monic irreducible of degree d")
        modulus = polys.pmonic(prime, modulus)[1]
    return FieldDesc(("finite", p, d, modulus, prime))


def ext_field(subfield, modulus):
    """Relative extension subfield[x]/(modulus); used for place residues."""
    if subfield.kind != "finite":
        raise UnsupportedField("extensions only over finite fields")
    modulus = polys.pmonic(subfield, polys.pnorm(subfield, modulus))[1]
    d = polys.pdeg(modulus)
    if d == 1:
        return subfield
    return FieldDesc(("finite", subfield.p, d, modulus, subfield))


def padic_field(p):
    if not _is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("p = 2 is unsupported")
    return FieldDesc(("padic", p))


def laurent_field(base, var):
    if var in base.var_names():
        raise UnsupportedField(f"variable {var!r} already used in {base}")
    return FieldDesc(("laurent", base, var))


def rational_function_field(base, var):
    if base.kind != "finite":
        raise UnsupportedField("rational function fields take a finite base")
    if var in base.var_names():
        raise UnsupportedField(f"variable {var!r} already used in {base}")
    return FieldDesc(("ratfun", base, var))


def two_variable_field(base, var1="x1", var2="x2"):
    if base.kind != "finite":
        raise UnsupportedField("two-variable fields take a finite base")
    if var1 == var2:
        raise UnsupportedField("variables must differ")
    return FieldDesc(("twovar", base, var1, var2))


# ---------------------------------------------------------------------------
# laurent / fraction data helpers


def _laurent_add(B, a, b):
    out = dict(a)
    for e, c in b:
        if e in out:
            s = B.dadd(out[e], c)
            if B.dis_zero(s):
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c
    return tuple(sorted(out.items()))


def _laurent_mul(B, a, b):
    out = {}
    for e1, c1 in a:
        for e2, c2 in b:
            e = e1 + e2
            prod = B.dmul(c1, c2)
            if e in out:
                s = B.dadd(out[e], prod)
                if B.dis_zero(s):
                    del out[e]
                else:
                    out[e] = s
            elif not B.dis_zero(prod):
                out[e] = prod
    return tuple(sorted(out.items()))


def _frac_norm(F, num, den):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return ((), (F.done(),))
    g = polys.pgcd(F, num, den)
    if polys.pdeg(g) > 0:
        num = polys.pquo(F, num, g)
        den = polys.pquo(F, den, g)
    lead, den = polys.pmonic(F, den)
    num = polys.pscale(F, F.dinv(lead), num)
    return (num, den)


def _frac_add(F, a, b):
    n1, d1 = a
    n2, d2 = b
    num = polys.padd(F, polys.pmul(F, n1, d2), polys.pmul(F, n2, d1))
    return _frac_norm(F, num, polys.pmul(F, d1, d2))


def _frac_mul(F, a, b):
    n1, d1 = a
    n2, d2 = b
    return _frac_norm(F, polys.pmul(F, n1, n2), polys.pmul(F, d1, d2))


# ---------------------------------------------------------------------------
# elements


class Elem:
    """Exact element of a supported field."""

    __slots__ = ("field", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = data

    def is_zero(self):
        return self.field.dis_zero(self.data)

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.field is not self.field:
                raise MixedFields(f"{other.field} vs {self.field}")
            return other.data
        if isinstance(other, int):
            return self.field.dfrom_int(other)
        return NotImplemented

    def __add__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return NotImplemented
        return Elem(self.field, self.field.dadd(self.data, d))

    __radd__ = __add__

    def __sub__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return NotImplemented
        return Elem(self.field, self.field.dsub(self.data, d))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Elem(self.field, self.field.dneg(self.data))

    def __mul__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return NotImplemented
        return Elem(self.field, self.field.dmul(self.data, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return NotImplemented
        return Elem(self.field, self.field.ddiv(self.data, d))

    def __rtruediv__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return NotImplemented
        return Elem(self.field, self.field.dmul(d, self.field.dinv(self.data)))

    def __pow__(self, n):
        return Elem(self.field, self.field.dpow(self.data, n))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.field is other.field and self.data == other.data
        if isinstance(other, int):
            return self.data == self.field.dfrom_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), _hashable(self.data)))

    def __repr__(self):
        return f"Elem({self.field}, {self})"

    def __str__(self):
        return elem_str(self)


def _hashable(data):
    return data  # all payloads are hashable already


def elem_arith(op, a, b=None):
    """Named arithmetic entry point: add | mul | neg | div."""
    if op == "neg":
        return -a
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(b, Elem) and b.is_zero():
            raise DivisionByZero("div by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# printing


def poly_str(F, coeffs, var):
    """Human-readable polynomial, descending powers."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if F.dis_zero(c):
            continue
        cs = coeff_str(F, c)
        if i == 0:
            parts.append(cs)
        else:
            xs = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                parts.append(xs)
            else:
                parts.append(f"{cs}*{xs}")
    return "+".join(parts)


def coeff_str(F, c):
    s = elem_str(Elem(F, c))
    if any(ch in s[1:] for ch in "+-") or "/" in s or s.startswith("-"):
        return f"({s})"
    return s


def elem_str(a):
    k = a.field.kind
    d = a.data
    if k == "finite":
        if a.field.subfield is None:
            return str(d)
        return poly_str(a.field.subfield, d, "w")
    if k == "padic":
        return str(d)
    if k == "laurent":
        if not d:
            return "0"
        B = a.field.base
        var = a.field.var
        parts = []
        for e, c in d:
            cs = coeff_str(B, c)
            if e == 0:
                parts.append(cs)
            else:
                xs = var if e == 1 else f"{var}^{e}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return "+".join(parts)
    F = a.field.coeff_field
    var = a.field.var if k == "ratfun" else a.field.var2
    num, den = d
    ns = poly_str(F, num, var)
    if polys.pdeg(den) == 0:
        return ns
    return f"({ns})/({poly_str(F, den, var)})"


# ---------------------------------------------------------------------------
# valuations and residues


def valuation_of(a, place=None):
    """Normalized discrete valuation of a nonzero element."""
    if a.is_zero():
        raise ZeroElement("valuation of zero")
    k = a.field.kind
    if k == "padic":
        p = a.field.p
        fr = a.data
        v = 0
        num, den = fr.numerator, fr.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return v
    if k == "laurent":
        return a.data[0][0]
    if k in ("ratfun", "twovar"):
        if place is None:
            raise UnsupportedField("rational function fields need an explicit place")
        return place_valuation(a, place)
    raise UnsupportedField(f"no valuation on {a.field}")


def _padic_unit_residue(field, fr):
    p = field.p
    num, den = fr.numerator, fr.denominator
    r = (num % p) * pow(den % p, p - 2, p) % p
    return Elem(finite_field(p), r)


def residue_of(a, place=None):
    """Image of a valuation-0 element in the residue field."""
    if a.is_zero():
        raise ZeroElement("residue of zero")
    k = a.field.kind
    if k == "padic":
        if valuation_of(a) != 0:
            raise NotAUnit(str(a))
        return _padic_unit_residue(a.field, a.data)
    if k == "laurent":
        if a.data[0][0] != 0:
            raise NotAUnit(str(a))
        return Elem(a.field.base, a.data[0][1])
    if k in ("ratfun", "twovar"):
        if place is None:
            raise UnsupportedField("need a place")
        v, res = place_unit_residue(a, place)
        if v != 0:
            raise NotAUnit(str(a))
        return res
    raise UnsupportedField(f"no residue map on {a.field}")


def unit_part_and_valuation(a):
    """(valuation, residue of the unit part) for intrinsic-valuation kinds."""
    v = valuation_of(a)
    k = a.field.kind
    if k == "padic":
        fr = a.data / Fraction(a.field.p) ** v
        return v, _padic_unit_residue(a.field, fr)
    if k == "laurent":
        return v, Elem(a.field.base, a.data[0][1])
    raise UnsupportedField(a.field.kind)


# ---------------------------------------------------------------------------
# places of rational function fields


@dataclass(frozen=True)
class Place:
    """A normalized discrete valuation on F_q(x) or F_q(x1, x2).

    ``pi`` is the monic irreducible (coefficient data over the owner's
    fraction-coefficient field) for finite places, None for the degree
    valuation at infinity.
    """

    owner: FieldDesc
    kind: str  # "finite" | "infinite"
    pi: tuple = None

    @property
    def degree(self):
        if self.kind == "infinite":
            return 1
        return polys.pdeg(self.pi)

    def __str__(self):
        if self.kind == "infinite":
            return "v_inf"
        F = self.owner.coeff_field
        var = self.owner.var if self.owner.kind == "ratfun" else self.owner.var2
        return f"v[{poly_str(F, self.pi, var)}]"


def finite_place(owner, pi_coeffs):
    """Place at a monic irreducible polynomial (tuple of Elem or data)."""
    F = owner.coeff_field
    data = tuple(c.data if isinstance(c, Elem) else F.dfrom_int(c)
                 for c in pi_coeffs)
    data = polys.pmonic(F, polys.pnorm(F, data))[1]
    return Place(owner, "finite", data)


def infinite_place(owner):
    return Place(owner, "infinite")


def residue_field_of(place):
    """Residue field descriptor; None when no exact representation exists."""
    owner = place.owner
    F = owner.coeff_field
    if place.kind == "infinite":
        return F
    d = polys.pdeg(place.pi)
    if d == 1:
        return F
    if owner.kind == "ratfun":
        return ext_field(F, place.pi)
    return None  # degree >= 2 places of two-variable fields: certified only


def place_valuation(a, place):
    if a.is_zero():
        raise ZeroElement("valuation of zero")
    F = a.field.coeff_field
    num, den = a.data
    if place.kind == "infinite":
        return polys.pdeg(den) - polys.pdeg(num)
    en, _ = polys.pmultiplicity(F, num, place.pi)
    ed, _ = polys.pmultiplicity(F, den, place.pi)
    return en - ed


def place_unit_residue(a, place):
    """(valuation v, residue of a * pi^{-v}) at the given place."""
    if a.is_zero():
        raise ZeroElement("unit residue of zero")
    F = a.field.coeff_field
    num, den = a.data
    if place.kind == "infinite":
        v = polys.pdeg(den) - polys.pdeg(num)
        res = F.ddiv(num[-1], den[-1])
        return v, Elem(F, res)
    en, num_u = polys.pmultiplicity(F, num, place.pi)
    ed, den_u = polys.pmultiplicity(F, den, place.pi)
    v = en - ed
    kappa = residue_field_of(place)
    if kappa is None:
        raise UnsupportedField("no exact residue field at this place")
    if polys.pdeg(place.pi) == 1:
        root = F.dneg(place.pi[0])
        rn = polys.peval(F, num_u, root)
        rd = polys.peval(F, den_u, root)
        return v, Elem(kappa, F.ddiv(rn, rd))
    rn = polys.pmod(F, num_u, place.pi)
    rd = polys.pmod(F, den_u, place.pi)
    return v, Elem(kappa, kappa.dmul(rn, kappa.dinv(rd)))


# ---------------------------------------------------------------------------
# squares


def _finite_is_square(field, data):
    if field.dis_zero(data):
        raise ZeroElement("squareness of zero")
    q = field.order
    return field.deq(field.dpow(data, (q - 1) // 2), field.done())


def canonical_nonsquare(field):
    """Deterministic nonsquare of a finite field (smallest in enumeration)."""
    for d in field.delements():
        if field.dis_zero(d):
            continue
        if not _finite_is_square(field, d):
            return Elem(field, d)
    raise UnsupportedField("every element is a square?")


def finite_sqrt(field, data):
    """A square root in a finite field, or None."""
    if field.dis_zero(data):
        return field.dzero()
    if not _finite_is_square(field, data):
        return None
    q = field.order
    if q % 4 == 3:
        r = field.dpow(data, (q + 1) // 4)
        return r
    # Tonelli-Shanks in the cyclic group of order q - 1
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = canonical_nonsquare(field).data
    c = field.dpow(z, s)
    r = field.dpow(data, (s + 1) // 2)
    t = field.dpow(data, s)
    m = e
    one = field.done()
    while not field.deq(t, one):
        i = 0
        tt = t
        while not field.deq(tt, one):
            tt = field.dmul(tt, tt)
            i += 1
        b = field.dpow(c, 1 << (m - i - 1))
        r = field.dmul(r, b)
        c = field.dmul(b, b)
        t = field.dmul(t, c)
        m = i
    return r


def _ratfun_sqrt_data(field, data):
    """Exact square root of a ratfun element, or None."""
    F = field.coeff_field
    num, den = data
    if not num:
        return field.dzero()
    leaf = (lambda c: finite_sqrt(F, c)) if F.kind == "finite" else \
        (lambda c: _ratfun_sqrt_data(F, c))
    sn = polys.polysqrt(F, num, leaf)
    if sn is None:
        return None
    sd = polys.polysqrt(F, den, leaf)
    if sd is None:
        return None
    return _frac_norm(F, sn, sd)


def is_square(a):
    """True iff a is a nonzero square (complete-field semantics for towers)."""
    if a.is_zero():
        raise ZeroElement("squareness of zero")
    k = a.field.kind
    if k == "finite":
        return _finite_is_square(a.field, a.data)
    if k == "padic":
        v, res = unit_part_and_valuation(a)
        return v % 2 == 0 and _finite_is_square(res.field, res.data)
    if k == "laurent":
        v, res = unit_part_and_valuation(a)
        return v % 2 == 0 and is_square(res)
    if k == "ratfun":
        F = a.field.base
        num, den = a.data
        prod = polys.pmul(F, num, den)
        lead, factors = polys.factor(F, prod)
        if not _finite_is_square(F, lead):
            return False
        return all(mult % 2 == 0 for _, mult in factors)
    if k == "twovar":
        F = a.field.coeff_field
        prod = polys.pmul(F, a.data[0], a.data[1])
        leaf = lambda c: _ratfun_sqrt_data(F, c)
        return polys.polysqrt(F, prod, leaf) is not None
    raise UnsupportedField(k)


def square_class_rep(a):
    """Canonical representative of the square class of a nonzero element."""
    if a.is_zero():
        raise ZeroElement("square class of zero")
    k = a.field.kind
    field = a.field
    if k == "finite":
        if _finite_is_square(field, a.data):
            return field.one()
        return canonical_nonsquare(field)
    if k == "padic":
        v, res = unit_part_and_valuation(a)
        Fp = finite_field(field.p)
        unit = 1 if _finite_is_square(Fp, res.data) else \
            canonical_nonsquare(Fp).data
        val = Fraction(field.p) ** (v % 2) * unit
        return Elem(field, Fraction(val))
    if k == "laurent":
        v, res = unit_part_and_valuation(a)
        rep = square_class_rep(res)
        t = field.gen()
        out = Elem(field, field.embed_base(rep.data))
        if v % 2:
            out = out * t
        return out
    if k == "ratfun":
        F = field.base
        num, den = a.data
        prod = polys.pmul(F, num, den)
        lead, factors = polys.factor(F, prod)
        out = F.done() if _finite_is_square(F, lead) else \
            canonical_nonsquare(F).data
        acc = polys.pconst(F, out)
        for irr, mult in factors:
            if mult % 2:
                acc = polys.pmul(F, acc, irr)
        return Elem(field, (acc, (F.done(),)))
    raise UnsupportedField(k)


def square_class_reps(k):
    """Complete duplicate-free square-class representatives, per the
    canonical ordering: 1, the nonsquare unit(s), then uniformizer
    multiples recursively."""
    prof = k.profile
    if prof.square_class_count == INF:
        raise InfiniteSquareClassGroup(str(k))
    if k.kind == "finite":
        return [k.one(), canonical_nonsquare(k)]
    if k.kind == "padic":
        Fp = finite_field(k.p)
        u = canonical_nonsquare(Fp).data
        return [k.one(), Elem(k, Fraction(u)), Elem(k, Fraction(k.p)),
                Elem(k, Fraction(u * k.p))]
    if k.kind == "laurent":
        base_reps = square_class_reps(k.base)
        units = [Elem(k, k.embed_base(r.data)) for r in base_reps]
        t = k.gen()
        return units + [u * t for u in units]
    raise InfiniteSquareClassGroup(str(k))


# ---------------------------------------------------------------------------
# polynomial factorization entry point


def twovar_laurent_field(T):
    """F_q(var2)((var1)): the completion used by the layered engines."""
    inner = rational_function_field(T.base, T.var2)
    return laurent_field(inner, T.var)


def twovar_to_laurent(a, L=None):
    """Re-expand an F_q(x1, x2) element as a Laurent polynomial in x1.

    Only defined when the element is polynomial in x2 and each
    x2-coefficient has a monomial x1-denominator; anything else raises
    UnsupportedShape.
    """
    from .errors import UnsupportedShape

    T = a.field
    if T.kind != "twovar":
        raise UnsupportedShape("expected a two-variable element")
    if L is None:
        L = twovar_laurent_field(T)
    inner = L.base  # F_q(var2)
    K = T.coeff_field  # F_q(var1)
    base = T.base
    num, den = a.data
    if polys.pdeg(den) != 0:
        raise UnsupportedShape("denominator involves the polynomial variable")
    buckets = {}
    for j, cj in enumerate(num):
        if K.dis_zero(cj):
            continue
        cnum, cden = cj
        m = polys.pdeg(cden)
        if cden != _monomial(base, m):
            raise UnsupportedShape("coefficient denominator is not a monomial")
        for i, c in enumerate(cnum):
            if base.dis_zero(c):
                continue
            buckets.setdefault(i - m, {})[j] = c
    out = []
    for e in sorted(buckets):
        poly_x2 = [base.dzero()] * (max(buckets[e]) + 1)
        for j, c in buckets[e].items():
            poly_x2[j] = c
        coeff = (polys.pnorm(base, poly_x2), (base.done(),))
        out.append((e, coeff))
    return Elem(L, tuple(out))


def _monomial(F, m):
    return tuple([F.dzero()] * m + [F.done()])


def ratfun_to_laurent(a, L):
    """View an F_q(x) element with monomial denominator inside F_q((x))."""
    from .errors import UnsupportedShape

    R = a.field
    if R.kind != "ratfun" or L.kind != "laurent" or L.base is not R.base:
        raise UnsupportedShape("incompatible fields")
    num, den = a.data
    m = polys.pdeg(den)
    if den != _monomial(R.base, m):
        raise UnsupportedShape("denominator is not a monomial")
    out = []
    for i, c in enumerate(num):
        if not R.base.dis_zero(c):
            out.append((i - m, c))
    return Elem(L, tuple(out))


def factor_poly(coeffs, field=None, seed=0):
    """Factor a polynomial over a finite field.

    ``coeffs`` is an ascending-degree sequence of Elem or int.  Returns
    (leading coefficient Elem, tuple of (monic factor as Elem tuple,
    multiplicity)), canonically sorted.
    """
    if field is None:
        for c in coeffs:
            if isinstance(c, Elem):
                field = c.field
                break
    if field is None or field.kind != "finite":
        raise UnsupportedField("factorization needs a finite coefficient field")
    data = polys.pnorm(field, [c.data if isinstance(c, Elem) else
                               field.dfrom_int(c) for c in coeffs])
    if not data:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    lead, factors = polys.factor(field, data, seed=seed)
    out = []
    for f, mult in factors:
        out.append((tuple(Elem(field, c) for c in f), mult))
    return Elem(field, lead), tuple(out)
