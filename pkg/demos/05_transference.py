"""Finite-horizon transference machinery.

The two hypotheses feeding the measure-transfer theorem are certified
at desk scale: the intersection property (an ultrametric theorem, so
the check is a self-test of the set builders) and the contraction
property with its explicit summable rate.
"""

from fractions import Fraction

from ffdioph import FieldSpec, LaurentMat, LaurentVec, parse_laurent
from ffdioph.goodmaps import PolyMap, origin_ball
from ffdioph.qpow import QPow
from ffdioph.transference import (
    SetFamilyConfig,
    check_bz,
    check_dyson,
    enum_alphas,
    verify_contraction,
    verify_intersection,
)

F2 = FieldSpec.get(2)
V = origin_ball(F2, 1, -1)
theta = parse_laurent("T^-1", F2)

print("== intersection property ==")
cfg = SetFamilyConfig(PolyMap.veronese(F2, 1), V, theta, Fraction(2),
                      2, 8)
alphas = enum_alphas(cfg)
print(f"t=2: {len(alphas)} candidate indices alpha = (p, q)")
rep = verify_intersection(cfg)
print(f"pairs tested: {rep.tested}, violations: {len(rep.violations)}, "
      f"ambiguous cells excluded: {rep.ambiguous_cells}")

print("\n== contraction property ==")
cfg2 = SetFamilyConfig(PolyMap.veronese(F2, 1), V, theta, Fraction(2),
                       3, 10, good_C=QPow(2, 1), alpha0_r=Fraction(1))
rep2 = verify_contraction(cfg2)
print(f"t=3: k_t = {rep2.details['k_t']!r}, "
      f"summability ratio {rep2.details['summability_ratio']!r} < 1")
held = sum(1 for r in rep2.details["rows"] if r.get("holds"))
print(f"measure bounds held on {held} balls; passed = {rep2.passed}")

print("\n== exponent inequalities on a structured point ==")
T = parse_laurent("T", F2)
z = parse_laurent("T^-1", F2)
for _ in range(80):
    z = (T + z).inverse(floor=-70)
y = z.forget_below(-64)
for c in check_bz(LaurentMat([[y]]), (theta,), 20):
    print(f"  {c.name}: {c.status}  (lhs {c.lhs}, rhs {c.rhs})")
for c in check_dyson(LaurentVec([y]), 20):
    print(f"  {c.name}: {c.status}")
