"""Artin continued fractions and best approximations.

Partial quotients are polynomials of degree >= 1; the convergents
p_k/q_k are exactly the best rational approximations, and the error
identity deg(q_k y - p_k) = -deg q_{k+1} is validated on every emitted
term.
"""

from ffdioph import FieldSpec, cf_expand, cf_expand_rational, parse_ratfn
from ffdioph.algebra.literals import parse_laurent

F2 = FieldSpec.get(2)

print("== a rational function terminates ==")
cf = cf_expand_rational(parse_ratfn("(T^5+T^2+1)/(T^3+T)", F2))
print("quotients:", [repr(a) for a in cf.quotients])
print("convergents:", [(repr(p), repr(q)) for p, q in cf.convergents])
print("terminated:", cf.terminated)

print("\n== the golden-ratio analogue ==")
# y = 1/(T + y): every partial quotient is T, the slowest-growing
# continued fraction, so y is the hardest point to approximate
T = parse_laurent("T", F2)
z = parse_laurent("T^-1", F2)
for _ in range(80):
    z = (T + z).inverse(floor=-44)
y = z.forget_below(-40)
cf = cf_expand(y, max_terms=18)
print("quotients:", [repr(a) for a in cf.quotients][:6], "...")
print("denominator degrees:", [q.deg for _, q in cf.convergents])
print("error degrees:      ", list(cf.err_degs))

print("\n== a Liouville-type point ==")
# sum of T^(-k!): enormous partial quotients force very good rational
# approximations (large Diophantine exponent)
digits = {-1: 1, -2: 1, -6: 1, -24: 1}
vals = [digits.get(d, 0) for d in range(-1, -81, -1)]
from ffdioph import Laurent

yl = Laurent(F2, vals, -1, exact=False, floor=-80)
cf = cf_expand(yl, max_terms=16)
print("denominator degrees:", [q.deg for _, q in cf.convergents])
print("error degrees:      ", list(cf.err_degs))
print("reason:", cf.reason, "| degree of the next denominator:",
      cf.next_q_deg)
print("note the jump after degree 6: the error -18 = 6 - 24 signals")
print("the convergent T^6-era approximates to quality e^-18")
