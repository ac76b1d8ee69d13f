"""Special forms and a-segments in Z5 * Z2, and the quotient route for Z8 *_Z2 Z4."""

from freewidth.instances import z5_z2, z8_z4

A = z5_z2()
w = A.parse("1:1 2:1 1:4 2:1 1:1 2:1 1:1")
print("word:        ", A.format(w))
print("special form:", A.special_form(w).tokens)
print("f =", A.f(w), A.run_stats(w).to_json())

for K in (1, 3, 40):
    x = A.witness_word(K)
    print(f"witness K={K}: {len(x)} syllables, f={A.f(x)}, bound(m=0)={A.plength_lower_bound(x, 0)}")

B = z8_z4()
q, push = B.quotient_push()
u = B.parse("1:1 2:1 1:3 2:3 1:5")
print("Z8*Z4 word", B.format(u), "-> quotient", q.format(push(u)), "in Z%d * Z%d" % (q.g1.order, q.g2.order))
