"""Dirichlet systems, best-approximation profiles, exponents.

The solver reduces a polynomial module under a weight-derived shift;
the balance condition forces a row of shifted degree <= 0, which *is* a
solution of the system.  Profiles then ask, horizon by horizon, for the
best achievable error; exponents are ratios read off the profile.
"""

from fractions import Fraction

from ffdioph import (
    DirichletInstance,
    FieldSpec,
    LaurentMat,
    best_profile,
    brute_force_profile,
    dirichlet_solve,
    omega_estimate,
    parse_laurent,
)

F2 = FieldSpec.get(2)

print("== a Dirichlet system ==")
Y = LaurentMat([[parse_laurent("T^-1 + T^-4 + O(T^-30)", F2),
                 parse_laurent("T^-2 + T^-3 + O(T^-30)", F2)]])
inst = DirichletInstance(Y, (6, 3, 3))
sol = dirichlet_solve(inst)
print(f"forms Y with weights {inst.t}")
print(f"solution p = {[repr(p) for p in sol.p]}, "
      f"q = {[repr(q) for q in sol.q]}")
print(f"error degrees {sol.err_degs} (target <= -7), "
      f"deg q = {sol.q_deg} (target <= 3)")

print("\n== profile of a single point ==")
y = parse_laurent("T^-1 + T^-4 + T^-9 + T^-16 + T^-25 + O(T^-48)", F2)
prof = best_profile(LaurentMat([[y]]), None, tau_max=10)
for e in prof.entries:
    print(f"  tau={e.tau:2d}  L={e.L!r:>6}  certified={e.exact}")
est = omega_estimate(prof, 1, 1, tau_min=5)
print("omega lower bound:", est.omega_lower,
      "| window estimate for omega-hat:", est.omega_hat_window)

print("\n== the profile agrees with exhaustive search ==")
small = LaurentMat([[parse_laurent("T^-1 + T^-3 + T^-4", F2),
                     parse_laurent("T^-2 + T^-5", F2)]])
lat = best_profile(small, None, tau_max=4)
brute = brute_force_profile(small, None, tau_max=4)
print("lattice:", [(e.tau, e.L) for e in lat.entries])
print("brute:  ", [(e.tau, e.L) for e in brute.entries])

print("\n== an inhomogeneous target ==")
theta = (parse_laurent("T^-2 + T^-3", F2),)
prof_in = best_profile(small, theta, tau_max=4)
print("inhomogeneous:", [(e.tau, e.L) for e in prof_in.entries])
