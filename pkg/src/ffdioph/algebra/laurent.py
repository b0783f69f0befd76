"""Precision-tracked Laurent series in 1/T over F_q.

A Laurent value stores the coefficients it actually knows: a window of
digits from its leading degree down to an absolute valuation floor.
``exact=True`` means every coefficient below the window is zero, so the
value is a finite sum known completely.  ``exact=False`` means digits
below ``floor`` are unknown (a big-oh tail), and any query whose answer
depends on them raises rather than guesses.  In particular a window of
all-zero digits with ``exact=False`` is an *ambiguous zero*: the value
could be 0 or anything of degree below the floor.

Degrees are the only magnitudes this module ever compares; |a| = e**deg
is never materialized.
"""

from __future__ import annotations

from ..errors import AmbiguousZero, DivisionByZero, PrecisionExhausted
from .degree import NEG_INF
from .field import FqElem
from .poly import Poly, RatFn, ops_for


class Laurent:
    """Element of F_q((1/T)) known down to a valuation floor.

    Attributes:
        field: owning FieldSpec.
        lead: degree of the leading listed digit (meaningful only when
            the digit window is nonempty).
        coeffs: raw field ints for degrees lead, lead-1, ..., floor.
        floor: lowest degree whose coefficient is listed.
        exact: True when all coefficients below the window are zero.
    """

    __slots__ = ("field", "lead", "coeffs", "floor", "exact", "tail_period")

    def __init__(self, field, digits, lead, exact=True, floor=None,
                 tail_period=None):
        """Canonicalize a digit window.

        ``digits`` lists coefficients for degrees lead, lead-1, ...; raw
        ints, FqElem, or plain ints for prime fields.  ``floor`` defaults
        to the end of the window.
        """
        vals = []
        for c in digits:
            if isinstance(c, FqElem):
                vals.append(c.value)
            elif field.r == 1:
                vals.append(c % field.p)
            else:
                vals.append(c)
        if floor is None:
            floor = lead - len(vals) + 1 if vals else 0
        else:
            want = lead - floor + 1
            if len(vals) > want:
                raise ValueError("digit window extends below floor")
            vals += [0] * (want - len(vals))
        # strip leading zeros
        while vals and vals[0] == 0:
            vals.pop(0)
            lead -= 1
        if exact:
            while vals and vals[-1] == 0:
                vals.pop()
                floor += 1
            if vals:
                floor = lead - len(vals) + 1
            else:
                floor = 0
        if not vals:
            lead = floor - 1
        self.field = field
        self.lead = lead
        self.coeffs = tuple(vals)
        self.floor = floor
        self.exact = exact
        self.tail_period = tail_period

    # -- constructors ----------------------------------------------------

    @classmethod
    def _make(cls, field, vals, lead, exact, floor, tail_period=None):
        obj = object.__new__(cls)
        obj.field = field
        obj.lead = lead
        obj.coeffs = tuple(vals)
        obj.floor = floor
        obj.exact = exact
        obj.tail_period = tail_period
        return obj

    @classmethod
    def zero(cls, field):
        return cls._make(field, (), -1, True, 0)

    @classmethod
    def unknown_below(cls, field, floor):
        """The ambiguous zero: all digits >= floor are 0, tail unknown."""
        return cls._make(field, (), floor - 1, False, floor)

    @classmethod
    def from_poly(cls, poly, exact=True, floor=None):
        ops = ops_for(poly.field)
        little = ops.to_coeffs(poly.raw)
        return cls(poly.field, tuple(reversed(little)), len(little) - 1,
                   exact=exact, floor=floor)

    @classmethod
    def monomial(cls, field, coeff, power):
        return cls(field, (coeff,), power)

    # -- knowledge bookkeeping --------------------------------------------

    @property
    def known_floor(self):
        """Lowest degree with a known coefficient; NEG_INF when exact."""
        return NEG_INF if self.exact else self.floor

    def is_known_zero(self):
        return self.exact and not self.coeffs

    def is_ambiguous(self):
        return not self.exact and not self.coeffs

    def deg_upper(self):
        """An upper bound for the degree that is always available."""
        if self.coeffs:
            return self.lead
        return NEG_INF if self.exact else self.floor - 1

    def degree(self):
        """Exact degree; NEG_INF for known zero; raises on ambiguity."""
        if self.coeffs:
            return self.lead
        if self.exact:
            return NEG_INF
        raise AmbiguousZero(
            f"all digits zero down to floor {self.floor}; "
            "degree unresolved"
        )

    def deg_le(self, bound):
        """Decide deg(self) <= bound, or raise AmbiguousZero if unknowable."""
        if self.coeffs:
            return self.lead <= bound
        if self.exact:
            return True
        if self.floor - 1 <= bound:
            return True
        raise AmbiguousZero(
            f"degree known only to be < {self.floor}; "
            f"cannot compare with {bound}"
        )

    def coeff_at(self, d):
        """Raw coefficient of T**d; raises below the knowledge floor."""
        if self.coeffs and d > self.lead:
            return 0
        if self.coeffs and d >= self.floor:
            return self.coeffs[self.lead - d]
        if self.exact or d >= self.floor:
            return 0
        raise PrecisionExhausted(f"digit at degree {d} below floor")

    # -- value surgery -----------------------------------------------------

    def known_part(self, floor):
        """Exact value made of the listed digits at degrees >= floor."""
        if self.exact and self.floor >= floor:
            return self
        vals = [self.coeff_at(d) if d >= self.floor else 0
                for d in range(self.lead, floor - 1, -1)]
        return Laurent(self.field, vals, self.lead, exact=True)

    def forget_below(self, floor):
        """Same digits, weakened to unknown-below-floor."""
        if not self.exact and self.floor >= floor:
            return self
        vals = [self.coeff_at(d) for d in range(self.lead, floor - 1, -1)]
        return Laurent(self.field, vals, self.lead, exact=False, floor=floor)

    def shift(self, k):
        """Multiply by T**k."""
        if self.is_known_zero():
            return self
        period = None
        if self.tail_period is not None:
            period = (self.tail_period[0] + k, self.tail_period[1])
        return Laurent._make(self.field, self.coeffs, self.lead + k,
                             self.exact, self.floor + k, period)

    # -- ring operations ----------------------------------------------------

    def _binary_window(self, other):
        ka, kb = self.known_floor, other.known_floor
        if ka is NEG_INF and kb is NEG_INF:
            floors = [f for f in
                      (self.floor if self.coeffs else None,
                       other.floor if other.coeffs else None)
                      if f is not None]
            return (min(floors) if floors else 0), True
        if ka is NEG_INF:
            return kb, False
        if kb is NEG_INF:
            return ka, False
        return max(ka, kb), False

    def __add__(self, other):
        self._compat(other)
        floor, exact = self._binary_window(other)
        lead = max(self.deg_upper(), other.deg_upper())
        if lead is NEG_INF:
            return (Laurent.zero(self.field) if exact
                    else Laurent.unknown_below(self.field, floor))
        if lead < floor:
            lead = floor - 1
        fadd = self.field.add
        vals = [fadd(self.coeff_at(d) if d >= self.known_floor else 0,
                     other.coeff_at(d) if d >= other.known_floor else 0)
                for d in range(lead, floor - 1, -1)]
        return Laurent(self.field, vals, lead, exact=exact, floor=floor)

    def __neg__(self):
        fneg = self.field.neg
        return Laurent._make(self.field, tuple(fneg(c) for c in self.coeffs),
                             self.lead, self.exact, self.floor,
                             self.tail_period)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = Laurent.from_poly(other)
        self._compat(other)
        if self.is_known_zero() or other.is_known_zero():
            return Laurent.zero(self.field)
        ka, kb = self.known_floor, other.known_floor
        da, db = self.deg_upper(), other.deg_upper()
        terms = []
        if ka is not NEG_INF:
            terms.append(ka + db)
        if kb is not NEG_INF:
            terms.append(kb + da)
        exact = not terms
        if not self.coeffs or not other.coeffs:
            # an ambiguous factor: only a degree bound survives
            return Laurent.unknown_below(self.field, max(terms))
        lead = self.lead + other.lead
        floor = max(terms) if terms else None
        ops = ops_for(self.field)
        ra = ops.from_coeffs(tuple(reversed(self.coeffs)))
        rb = ops.from_coeffs(tuple(reversed(other.coeffs)))
        prod = ops.to_coeffs(ops.mul(ra, rb))
        # prod is little-endian starting at degree self.floor + other.floor
        base = self.floor + other.floor
        vals = list(reversed(prod))
        vals = [0] * (lead - base - len(vals) + 1) + vals
        if exact:
            return Laurent(self.field, vals, lead, exact=True)
        keep = lead - floor + 1
        return Laurent(self.field, vals[:keep], lead, exact=False,
                       floor=floor)

    __rmul__ = __mul__

    def inverse(self, floor=None):
        """Multiplicative inverse, known down to an explicit floor.

        Inexact inputs determine their own output floor
        (floor - 2*lead); a requested floor below that is unattainable.
        Exact non-monomial inputs have an infinite expansion, so a target
        floor is required (default: the same relative precision rule).
        """
        if self.is_ambiguous():
            raise AmbiguousZero("cannot invert an unresolved value")
        if self.is_known_zero():
            raise DivisionByZero("inverse of zero series")
        lead = self.lead
        if self.exact and len(self.coeffs) == 1:
            return Laurent.monomial(self.field, self.field.inv(self.coeffs[0]),
                                    -lead)
        attainable = (self.floor - 2 * lead) if not self.exact else None
        if floor is None:
            floor = self.floor - 2 * lead
        if attainable is not None and floor < attainable:
            floor = attainable
        n = -lead - floor + 1  # number of output digits
        if n <= 0:
            return Laurent.unknown_below(self.field, floor)
        finv, fmul, fsub = self.field.inv, self.field.mul, self.field.sub
        a0_inv = finv(self.coeffs[0])
        A = self.coeffs  # A[j] = coeff of T**(lead-j)
        R = [a0_inv]
        for i in range(1, n):
            acc = 0
            for j in range(1, min(i, len(A) - 1) + 1):
                if A[j] and R[i - j]:
                    acc = self.field.add(acc, fmul(A[j], R[i - j]))
            R.append(fmul(a0_inv, self.field.neg(acc)) if acc else 0)
        # finite Laurent sums are units only when they are monomials, so a
        # non-monomial inverse never closes up exactly
        return Laurent(self.field, R, -lead, exact=False, floor=floor)

    def divide(self, other, floor=None):
        return self * other.inverse(floor=floor)

    def poly_part(self):
        """Digits at degrees >= 0, as a Poly; needs the floor to reach 0."""
        if not self.exact and self.floor > 0:
            raise PrecisionExhausted(
                f"polynomial part needs digits down to 0, floor is {self.floor}"
            )
        if self.deg_upper() is NEG_INF or self.deg_upper() < 0:
            return Poly.zero(self.field)
        little = [self.coeff_at(d) for d in range(0, self.lead + 1)]
        return Poly(self.field, little)

    def frac_part(self):
        """self minus its polynomial part (degrees <= -1 only)."""
        if self.deg_upper() is NEG_INF or self.deg_upper() < 0:
            return self
        if not self.exact and self.floor > 0:
            raise PrecisionExhausted("fractional part unresolved")
        lead = -1
        if self.known_floor is NEG_INF:
            if self.floor > -1:
                return Laurent.zero(self.field)
            vals = [self.coeff_at(d) for d in range(-1, self.floor - 1, -1)]
            return Laurent(self.field, vals, -1, exact=True)
        if self.floor > -1:
            return Laurent.unknown_below(self.field, self.floor)
        vals = [self.coeff_at(d) for d in range(-1, self.floor - 1, -1)]
        return Laurent(self.field, vals, lead, exact=False, floor=self.floor)

    # -- plumbing -----------------------------------------------------------

    def _compat(self, other):
        if not isinstance(other, Laurent) or other.field != self.field:
            raise TypeError("Laurent values over different fields")

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.field == other.field
            and self.exact == other.exact
            and self.coeffs == other.coeffs
            and (self.exact or self.floor == other.floor)
            and (not self.coeffs or self.lead == other.lead)
        )

    def __hash__(self):
        return hash((self.field.q, self.exact, self.lead if self.coeffs else None,
                     self.coeffs, None if self.exact else self.floor))

    def __repr__(self):
        from .literals import format_laurent

        return format_laurent(self)

    def agrees_with(self, other, down_to):
        """Digit-for-digit agreement at degrees >= down_to."""
        top = max(self.deg_upper(), other.deg_upper(), down_to)
        if top is NEG_INF:
            return True
        for d in range(top, down_to - 1, -1):
            if self.coeff_at(d) != other.coeff_at(d):
                return False
        return True


def laurent_from_rational(f, floor):
    """Expand num/den down to ``floor``; detects exact and periodic tails.

    The digits above degree 0 come from one polynomial division; below 0
    the expansion runs the classical remainder recurrence whose state
    space is finite, so a repeated state proves the tail periodic and is
    recorded as ``tail_period = (first_degree_of_cycle, period_length)``.
    """
    if isinstance(f, Poly):
        f = RatFn(f)
    if f.den.is_zero():
        raise DivisionByZero("expansion of P/0")
    field = f.field
    if f.num.is_zero():
        return Laurent.zero(field)
    lead = f.num.deg - f.den.deg
    if floor > lead:
        raise ValueError("floor above the leading degree")
    ops = ops_for(field)
    num, den = f.num.raw, f.den.raw
    dd = f.den.deg
    quot, rem = ops.divmod(num, den)
    qlist = ops.to_coeffs(quot)
    digits = {}
    for j, c in enumerate(qlist):
        if c:
            digits[j] = c
    state = rem
    tail_period = None
    seen = {}
    d = -1
    flc_inv = field.inv(f.den.lc())
    while d >= floor and state:
        if tail_period is None:
            if state in seen:
                tail_period = (seen[state], seen[state] - d)
            else:
                seen[state] = d
        c = 0
        if ops.deg(state) == dd - 1:
            c = field.mul(ops.lc(state), flc_inv)
        if c:
            digits[d] = c
        state = ops.addmul(ops.shift(state, 1), den, field.neg(c), 0)
        d -= 1
    exact = not state
    vals = [digits.get(k, 0) for k in range(lead, floor - 1, -1)]
    return Laurent(field, vals, lead, exact=exact, floor=floor,
                   tail_period=tail_period)


def laurent_arith(op, a, b=None):
    """Dispatch add/sub/mul/inv by name (the module's operation surface)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def degree(a):
    """Degree of a Laurent value (NEG_INF for known zero)."""
    return a.degree()


class LaurentVec:
    """Fixed-length vector of Laurent values with the sup-norm degree."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)
        if not self.entries:
            raise ValueError("empty vector")
        f = self.entries[0].field
        if any(e.field != f for e in self.entries):
            raise ValueError("mixed fields in vector")

    @property
    def field(self):
        return self.entries[0].field

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, LaurentVec) and self.entries == other.entries

    def __repr__(self):
        return f"({', '.join(map(repr, self.entries))})"


class LaurentMat:
    """Rectangular matrix of Laurent values (rows of LaurentVec)."""

    __slots__ = ("rows", "m", "n")

    def __init__(self, rows):
        self.rows = tuple(LaurentVec(r) if not isinstance(r, LaurentVec)
                          else r for r in rows)
        self.m = len(self.rows)
        if self.m == 0:
            raise ValueError("empty matrix")
        self.n = len(self.rows[0])
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def field(self):
        return self.rows[0].field

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return LaurentMat(
            [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)]
        )

    def __eq__(self, other):
        return isinstance(other, LaurentMat) and self.rows == other.rows

    def __repr__(self):
        return "[" + "; ".join(repr(r) for r in self.rows) + "]"


def sup_norm(v):
    """Sup-norm degree of a vector: max entry degree; raises on ambiguity."""
    entries = v.entries if isinstance(v, LaurentVec) else tuple(v)
    best = NEG_INF
    for e in entries:
        d = e.degree()
        if best is NEG_INF or (d is not NEG_INF and d > best):
            best = d
    return best
