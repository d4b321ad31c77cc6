"""Seeded sampling of the measure families and the convergence of orbital
measures of the canonical diagonal generators to the classified limits.
"""

import math

from nonarch import (
    DeltaParam,
    FieldParams,
    MatF,
    OmegaParam,
    RandomStream,
    convergence_experiment,
    empirical_charfun,
    sample_corner,
)

q3 = FieldParams("padic", 3, 12)
rng = RandomStream(7)

print("== sampled corners vs closed-form characteristic functions ==")
par = DeltaParam((1,), None)
count = 3000
samples = [sample_corner(q3, par, 3, rng.child("mu", i)) for i in range(count)]
for ell in (0, 1):
    A = MatF.diagonal(q3, [q3.uniformizer_pow(-ell), q3.zero(), q3.zero()])
    est = empirical_charfun(samples, A)
    closed = par.char_single(ell).to_complex(3)
    print(f"  ell={ell}: empirical {est.mean:+.4f} vs closed {closed:+.4f}"
          f"  (3/sqrt(M) = {3 / math.sqrt(count):.4f})")

om = OmegaParam(None, (0,), ())
nsam = [sample_corner(q3, om, 2, rng.child("nu", i)) for i in range(count)]
x = q3.uniformizer_pow(-1)
est = empirical_charfun(nsam, MatF.diagonal(q3, [x, q3.zero()]))
print(f"  symmetric rank-one at pi^-1: empirical {est.mean:+.4f}"
      f" vs closed {om.char_single(x).to_complex(3):+.4f}")

print("\n== orbital measures of diag generators converge to the limits ==")
for param, name in ((DeltaParam((1,), None), "two-sided"), (OmegaParam(None, (1,), ()), "congruence")):
    rows = convergence_experiment(q3, param, [4, 8, 16], 20_000, rng.child("conv", name))
    print(f"  {name}:")
    for r in rows:
        print(f"    n={r.n:2d}: max gap {r.max_gap:.5f}  bound {r.bound:.5f}  pass={r.passed}")
