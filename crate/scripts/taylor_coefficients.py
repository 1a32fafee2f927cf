"""Regenerate the small-s series constants used in crates/core/src/integrands.rs.

    python3 scripts/taylor_coefficients.py

u(s) = cosh(s)/sinh(s)^3 - 1/s^3 is odd and analytic for |s| < pi. The
integrands are assembled from u so that the cancellation between the two
terms never happens in floating point near s = 0. The series is used for
|s| < 1, where 20 terms leave a truncation error far below 1e-17.
"""
import sympy as sp

NTERMS = 20

s = sp.symbols("s")
u = sp.cosh(s) / sp.sinh(s) ** 3 - 1 / s**3
ser = sp.series(u, s, 0, 2 * NTERMS + 1).removeO()
print("const U_SERIES: [f64; %d] = [" % NTERMS)
for k in range(1, 2 * NTERMS, 2):
    c = sp.nsimplify(ser.coeff(s, k))
    print(f"    {sp.N(c, 20)}, // s^{k}: {c}")
print("];")

rat = (s**2 - 3 * sp.pi**2 / 4) / (s**2 + sp.pi**2 / 4) ** 3
for sign in (1, -1):
    g = (1 / s**3 + sign * sp.cosh(s) / sp.sinh(s) ** 3) ** 2 \
        + sp.sinh(s) ** 2 / sp.cosh(s) ** 6 \
        + sign * 2 * s * sp.sinh(s) / sp.cosh(s) ** 3 * rat
    ser = sp.series(g, s, 0, 6).removeO()
    print("g", "+" if sign > 0 else "-",
          [sp.simplify(ser.coeff(s, k)) for k in range(-6, 6, 2)])
