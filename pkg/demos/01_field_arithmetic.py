"""Tour of the exact arithmetic layer.

The scalars live in F_q((1/T)): Laurent series in 1/T over a finite
field.  Absolute values are e**deg and the code only ever handles the
integer exponent, so every comparison below is integer arithmetic.
"""

from ffdioph import (
    FieldSpec,
    RatFn,
    laurent_from_rational,
    parse_laurent,
    parse_poly,
    parse_ratfn,
)

F2 = FieldSpec.get(2)
F9 = FieldSpec.get(9)  # built-in modulus x^2 + 1 over F_3

print("== polynomials and rationals ==")
a = parse_poly("T^3 + T + 1", F2)
b = parse_poly("T + 1", F2)
q, r = divmod(a, b)
print(f"({a}) = ({b})({q}) + {r}")

f = parse_ratfn("(T^2+1)/T", F2)
print(f"{f!r} has degree {f.deg} (|f| = e^{f.deg})")

print("\n== Laurent expansions ==")
s = laurent_from_rational(f, -6)
print(f"expansion of {f!r}: {s}   (exact: {s.exact})")

g = laurent_from_rational(parse_ratfn("1/(T+1)", F2), -8)
print(f"expansion of 1/(T+1): {g}")
print(f"  periodic tail detected: starts at degree {g.tail_period[0]}, "
      f"period {g.tail_period[1]}")

print("\n== the precision model ==")
x = parse_laurent("T^-1 + T^-3 + O(T^-6)", F2)
y = parse_laurent("T^-1 + O(T^-6)", F2)
diff = x - y
print(f"({x}) - ({y}) = {diff}")
print(f"  knowledge floor of the result: {diff.floor}")

ambiguous = x - x
print(f"({x}) - itself = {ambiguous!r}  <- all known digits cancel")
try:
    ambiguous.degree()
except Exception as exc:
    print(f"  asking for its degree raises {type(exc).__name__}: "
          "the tail below the floor is unknown")

print("\n== ultrametric behaviour ==")
u = parse_laurent("T^2 + 1", F2)
v = parse_laurent("T^2 + T", F2)
print(f"deg({u}) = deg({v}) = 2, but deg of the sum = {(u + v).degree()}")

print("\n== extension fields ==")
e = parse_laurent("[1,2]*T + [0,1]", F9)
print(f"over F_9 with basis tuples: {e}")
print(f"  squared: {e * e}")
