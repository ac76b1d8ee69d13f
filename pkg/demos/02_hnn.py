"""Britton reduction, signatures and the run-count function f on an HNN extension of Z4."""

import numpy as np

from freewidth.instances import z4_hnn

G = z4_hnn()
w = G.parse("g:1 t^-1 g:2 t g:1")
print(G.format(w), "reduces to", G.format(G.reduce(w)))

rng = np.random.default_rng(0)
u = G.random_reduced_word(8, rng)
print("random word:", G.format(u))
print("signature:  ", G.signature(u))
print("a shuffle:  ", G.format(G.shuffle(u, rng)), "(same signature, same element)")

for K in (1, 3, 10, 64):
    x = G.witness_word(K)
    print(f"witness K={K:3d}: f={G.f(x):3d}  lower bound on palindromic length (m=0): "
          f"{G.plength_lower_bound(x, 0)}")

# the two-sided defect is not bounded: squaring a witness collapses f
x = G.witness_word(16)
print("f(w) =", G.f(x), " f(w w) =", G.f(G.multiply(x, x)))
