"""Tour of the built-in deformed-logarithm families.

Each family is a strictly increasing concave ln_phi with ln_phi(1) = 0,
together with its antiderivative F, deduced logarithm omega and clamped
inverse exp_phi.  This script prints the derived constants and spot-checks
the defining relations numerically.
"""

import numpy as np

import phientropy as pe

families = pe.default_family_grid()

print("=" * 72)
print("family constants")
print("=" * 72)
print(f"{'family':<24} {'F(0)':>10} {'ln(0+)':>10} {'sup ln':>10} {'omega(0+)':>10}")
for fam in families:
    print(
        f"{fam.label:<24} {fam.f_zero:>10.5f} {fam.ln_at_zero:>10.4g} "
        f"{fam.ln_sup:>10.4g} {fam.omega_at_zero:>10.4g}"
    )

print()
print("=" * 72)
print("evaluations at x = 2 (ln, F, omega) and round trip exp(ln(x))")
print("=" * 72)
for fam in families:
    x = 2.0
    ln = pe.ln_phi(fam, x)
    back = pe.exp_phi(fam, ln)
    print(
        f"{fam.label:<24} ln={ln:>9.5f}  F={pe.big_f(fam, x):>9.5f}  "
        f"omega={pe.omega_phi(fam, x):>9.5f}  roundtrip drift={abs(back - x):.2e}"
    )

print()
print("=" * 72)
print("the piecewise-linear family interpolates ln(base**n) = n exactly")
print("=" * 72)
pw = pe.piecewise_linear(2.0)
for n in range(-3, 4):
    print(f"  ln_phi(2^{n:+d}) = {pe.ln_phi(pw, 2.0**n):+.1f}")

print()
print("=" * 72)
print("velocity density of the kappa-distribution family")
print("=" * 72)
km = pe.kappa_maxwell(1.0)
for v in (0.0, 0.5, 1.0, 2.0):
    rho = pe.kappa_maxwell_density(km, 1.0, 2.0, v, 1.0)
    composed = pe.exp_phi(km, -0.5 * 2.0 * v * v)
    print(f"  v={v:4.1f}  rho={rho:.6f}  via exp_phi={composed:.6f}")

print()
print("omega is the logarithm the entropy functional is built from;")
print("for the tsallis family it is the q-logarithm (1/k)(1 - x**-k):")
ts = pe.tsallis(0.5)
xs = np.array([0.5, 1.0, 2.0, 4.0])
print("  x:          ", xs)
print("  omega(x):   ", np.asarray(pe.omega_phi(ts, xs)))
print("  q-log form: ", (1 / 0.5) * (1 - xs**-0.5))
