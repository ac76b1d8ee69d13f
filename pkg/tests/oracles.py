"""Independent oracles: permutation images, brute-force run counts, naive enumerations.

Nothing here calls the reduction or normal-form code of the package.
"""

from __future__ import annotations

import itertools
import re

import numpy as np


def perm_mul(p, q):
    """``p*q`` as ``i -> p[q[i]]``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity_perm(n):
    return tuple(range(n))


def regular_rep(group):
    """Left regular representation ``g -> (x -> g x)`` from the raw table."""
    t = group.mult
    return {g: tuple(int(t[g, x]) for x in range(group.order)) for g in range(group.order)}


def extend_hom(group, fixed: dict, gen: int, image, n: int):
    """Extend ``fixed`` (a hom on a subgroup) by ``gen -> image``; None if that is not a hom."""
    rho = dict(fixed)
    rho.setdefault(0, identity_perm(n))
    rho[gen] = image
    gens = list(fixed) + [gen]
    frontier = list(rho)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(group.mult[x, s])
                img = perm_mul(rho[x], rho[s])
                if y in rho:
                    if rho[y] != img:
                        return None
                else:
                    rho[y] = img
                    nxt.append(y)
        frontier = nxt
    if len(rho) != group.order:
        return None
    for a in range(group.order):
        for b in range(group.order):
            if rho[int(group.mult[a, b])] != perm_mul(rho[a], rho[b]):
                return None
    return rho


def hnn_reps(inst, count=3, seed=0):
    """Homomorphisms of the HNN extension into ``Sym(G)``: regular rep plus a valid image of t."""
    base = inst.base
    rho = regular_rep(base)
    n = base.order
    valid = []
    for tau in itertools.permutations(range(n)):
        ti = perm_inv(tau)
        if all(perm_mul(perm_mul(ti, rho[h]), tau) == rho[inst.phi(h)] for h in inst.h1):
            valid.append(tau)
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(valid), size=min(count, len(valid)), replace=False)
    return [(rho, valid[int(i)]) for i in picks]


def hnn_image(inst, rep, w):
    rho, tau = rep
    p = identity_perm(len(tau))
    for kind, x in inst.to_letters(w):
        if kind == "g":
            q = rho[x]
        else:
            q = tau if x == 1 else perm_inv(tau)
        p = perm_mul(p, q)
    return p


def amalgam_reps(inst, count=3, seed=0):
    """Pairs of homs ``G1 -> Sym(G1)``, ``G2 -> Sym(G1)`` agreeing on the amalgamated subgroup."""
    g1, g2 = inst.g1, inst.g2
    rho1 = regular_rep(g1)
    n = g1.order
    fixed = {inst.transport(h, 1, 2): rho1[h] for h in inst.subgroups[1]}
    h2 = set(inst.subgroups[2])
    # one extra generator suffices for every standard second factor
    gen = next(x for x in range(g2.order)
               if len(_closure(g2, list(h2) + [x])) == g2.order)
    reps = []
    for image in itertools.permutations(range(n)):
        rho2 = extend_hom(g2, fixed, gen, image, n)
        if rho2 is not None:
            reps.append((rho1, rho2))
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(reps), size=min(count, len(reps)), replace=False)
    return [reps[int(i)] for i in picks]


def _closure(group, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(group.mult[x, s])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def amalgam_image(inst, rep, w):
    rhos = {1: rep[0], 2: rep[1]}
    p = identity_perm(len(rep[0][0]))
    for f, x in w.syllables:
        p = perm_mul(p, rhos[f][x])
    return p


def runs_by_regex(sig):
    """Maximal runs of +1/-1 found with a regex over a string encoding."""
    s = "".join("+" if x == 1 else "-" for x in sig)
    p, m = {}, {}
    for run in re.findall(r"\++|-+", s):
        d = p if run[0] == "+" else m
        d[len(run)] = d.get(len(run), 0) + 1
    return p, m


def f_by_brute_force(p, m):
    keys = set(p) | set(m)
    return sum((p.get(k, 0) - m.get(k, 0)) % 2 for k in keys)


def gaps_by_pairs(marks):
    """Check every pair ``i < j`` of equal nonzero marks with no equal mark strictly between."""
    p, m = {}, {}
    n = len(marks)
    for i in range(n):
        for j in range(i + 1, n):
            if marks[i] == 0 or marks[j] != marks[i]:
                continue
            if any(marks[x] == marks[i] for x in range(i + 1, j)):
                break
            gap = j - i - 1
            if gap % 2 == 1:
                d = p if marks[i] == 1 else m
                d[(gap + 1) // 2] = d.get((gap + 1) // 2, 0) + 1
            break
    return p, m


def free_product_ball_size(n1, n2, radius):
    """Elements of ``Z_n1 * Z_n2`` of word length <= radius over all nontrivial factor letters.

    Each nontrivial element of a factor is a single letter, so word length equals syllable length.
    """
    total = 1
    for length in range(1, radius + 1):
        for start in (0, 1):
            choices = [(n1 - 1) if (start + i) % 2 == 0 else (n2 - 1) for i in range(length)]
            total += int(np.prod(choices))
    return total


def gaps_by_positions(marks):
    """Same counts as ``gaps_by_pairs`` from position differences; fast enough for long words."""
    arr = np.asarray([int(x) for x in marks])
    out = []
    for sign in (1, -1):
        pos = np.flatnonzero(arr == sign)
        gaps = np.diff(pos) - 1
        odd = gaps[gaps % 2 == 1]
        ks, counts = np.unique((odd + 1) // 2, return_counts=True)
        out.append({int(k): int(c) for k, c in zip(ks, counts)})
    return tuple(out)
