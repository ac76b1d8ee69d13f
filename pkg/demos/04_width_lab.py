"""Balls, palindrome sets, the palindromic-length oracle and a property suite."""

from freewidth import lab
from freewidth.instances import z2_z2, z4_hnn, z5_z2

D = z2_z2()
ball = lab.enumerate_ball(D, 10)
oracle = lab.PlengthOracle(D, 0)
print("Z2*Z2 radius 10:", len(ball), "elements; oracle values",
      sorted({oracle(k) for k in ball.elements}))

A = z5_z2()
for m in range(3):
    print(f"Z5*Z2: {len(lab.enumerate_m_almost_palindromes(A, 6, m))} elements spelled by "
          f"{m}-almost palindromes of length <= 6")

for suite in ("palindrome", "product", "defect"):
    rep = lab.verify_suite(z4_hnn(), suite, samples=500, seed=1)
    print(f"{suite:10s} max={rep.max_value:2d} bound: {rep.bound:35s} violations={len(rep.violations)}")

growth = lab.growth_report(A, 0, 120)
print("amalgam witness bound first exceeds 10 at K =", growth.first_exceeding[10])
