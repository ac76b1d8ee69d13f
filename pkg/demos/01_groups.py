"""Finite groups, double cosets and the amalgam case split."""

from freewidth import classify_amalgam_case, cyclic, double_coset, subgroup_check, symmetric
from freewidth.instances import klein_four

s3 = symmetric(3)
h = subgroup_check(s3, [0, 1])
a = next(x for x in s3.elements if s3.element_order(x) == 3)
print("S3 element orders:", [s3.element_order(x) for x in s3.elements])
print("H a H      =", sorted(double_coset(s3, h, a)))
print("H a^-1 H   =", sorted(double_coset(s3, h, s3.inverse(a))))

pairs = {
    "Z5 * Z2": (cyclic(5), [0], cyclic(2), [0]),
    "S3 *_Z2 V4": (s3, [0, 1], klein_four(), [0, 1]),
    "Z8 *_Z2 Z4": (cyclic(8), [0, 4], cyclic(4), [0, 2]),
    "Z4 *_Z2 V4": (cyclic(4), [0, 2], klein_four(), [0, 1]),
}
for label, (g1, m1, g2, m2) in pairs.items():
    c = classify_amalgam_case(g1, subgroup_check(g1, m1), g2, subgroup_check(g2, m2))
    print(f"{label:12s} -> {c.case:15s} witness={c.witness}")
    if c.fpt is not None:
        print("   fixed presentations:", c.fpt.entries, "self-inverse, left out:", c.fpt.self_inverse)
