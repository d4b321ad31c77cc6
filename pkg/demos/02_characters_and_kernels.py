"""The additive character, quadratic Gauss sums, and the two kernels behind
every characteristic-function formula, each checked against its independent
brute-force oracle.
"""

from nonarch import (
    FieldParams,
    chi,
    gauss_sum,
    square_kernel_sign,
    theta_bruteforce,
    theta_closed,
)
from nonarch.characters import KIND_BILINEAR, KIND_SQUARE

q3 = FieldParams("padic", 3, 12)

print("== chi: trivial on integers, fractional-part phase below ==")
print("chi(7)      =", chi(q3.from_int(7)))
print("chi(pi^-1)  =", chi(q3.uniformizer_pow(-1)), " (e^{2 pi i/3})")

print("\n== quadratic Gauss sums ==")
for p in (3, 5, 7):
    g = gauss_sum(1, p)
    print(f"p={p}: sum = {g.complex_value:.4f} = ({g.sign:+d}) * {g.rho} * sqrt({p})")

print("\n== kernels: closed form vs direct finite summation ==")
print("character sign s =", square_kernel_sign(q3), "(computed, not assumed)")
eps = q3.eps()
for ell in range(-1, 4):
    for u, tag in ((q3.one(), "1"), (eps, "eps")):
        x = u.shift(-ell)
        closed = theta_closed(x, KIND_SQUARE)
        brute = theta_bruteforce(x, KIND_SQUARE)
        print(f"square kernel at {tag}*pi^{-ell}: {closed.to_complex(3):+.4f}"
              f"  brute {brute:+.4f}  (exact: {closed.unit} * 3^-{closed.half_exp}/2)")

x = q3.uniformizer_pow(-2)
print("\nbilinear kernel at pi^-2:",
      theta_closed(x, KIND_BILINEAR).to_complex(3), "vs brute",
      theta_bruteforce(x, KIND_BILINEAR))
