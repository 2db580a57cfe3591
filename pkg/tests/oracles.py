"""Independent brute-force reimplementations used as test oracles.

Nothing here calls into the package's decomposition or multiplicity
routines; everything is recomputed from first principles (weight
multisets, character sums, exhaustive sweeps, direct enumeration of
partitions) so that agreement is evidence and not tautology.
"""

import itertools
from collections import Counter
from fractions import Fraction

from tempiric.weights import CYCLIC2, SO3, SU2, TORUS1


def atom_weight_list(kind, v):
    if kind == SU2:
        return list(range(-v, v + 1, 2))
    if kind == SO3:
        return list(range(-v, v + 1))
    return [v]


def weight_multiset(atoms, label):
    axes = [atom_weight_list(kind, v) for kind, v in zip(atoms, label)]
    return Counter(itertools.product(*axes))


def tensor_by_peeling(atoms, label1, label2):
    """Tensor decomposition by peeling highest weights off the product multiset.

    The product multiset is the pairwise sum of the factors' weights
    (parity bits add mod 2).  The lexicographically largest remaining
    weight is always the label of a present irreducible; subtract its
    weight multiset and repeat.
    """
    m1 = weight_multiset(atoms, label1)
    m2 = weight_multiset(atoms, label2)
    product = Counter()
    for w1, c1 in m1.items():
        for w2, c2 in m2.items():
            combined = tuple(
                (a + b) % 2 if kind == CYCLIC2 else a + b
                for kind, a, b in zip(atoms, w1, w2)
            )
            product[combined] += c1 * c2
    out = {}
    while product:
        top = max(w for w, c in product.items() if c > 0)
        out[top] = out.get(top, 0) + 1
        product.subtract(weight_multiset(atoms, top))
        product = +product
    return out


def su2_peel(multiset):
    """Decompose a one-dimensional weight multiset over SU(2) labels."""
    counts = Counter(multiset)
    out = {}
    while counts:
        top = max(w for w, c in counts.items() if c > 0)
        out[top] = out.get(top, 0) + 1
        counts.subtract(range(-top, top + 1, 2))
        counts = +counts
    return out


def restrict_parity_by_characters(n):
    """Restriction of a circle character to the two-element subgroup.

    Computed by character inner products over the subgroup {1, -1}:
    the character value at -1 is (-1)^n.
    """
    at_identity = 1
    at_minus = (-1) ** (n % 2)
    trivial = (at_identity + at_minus) // 2
    sign = (at_identity - at_minus) // 2
    return {k: v for k, v in {(0,): trivial, (1,): sign}.items() if v}


def restrict_so3_by_weights(j):
    return {(n,): 1 for n in range(-j, j + 1)}


def restrict_clebsch_by_weights(a, b):
    """Diagonal restriction of an SU(2) x SU(2) label by torus weights."""
    sums = [
        w1 + w2
        for w1 in atom_weight_list(SU2, a)
        for w2 in atom_weight_list(SU2, b)
    ]
    return {(c,): m for c, m in su2_peel(sums).items()}


def restriction_oracle(datum, tau):
    rule = datum.branching_rule
    if rule == "parity":
        return restrict_parity_by_characters(tau[0])
    if rule == "torus-restriction":
        return restrict_so3_by_weights(tau[0])
    return restrict_clebsch_by_weights(*tau)


def mult_in_induced_oracle(datum, sigma_rep, tau):
    """Multiplicity of tau in the class of sigma_rep, recomputed directly."""
    dual = tuple(
        -v if kind == TORUS1 else v
        for kind, v in zip(datum.m.atoms, sigma_rep)
    )
    return restriction_oracle(datum, tau).get(dual, 0)


def norm_oracle(datum, label):
    coords = [
        v for kind, v in zip(datum.k.atoms, label) if kind != CYCLIC2
    ]
    x = [c + r for c, r in zip(coords, datum.two_rho_c)]
    return sum(
        Fraction(x[i]) * datum.gram[i][j] * x[j]
        for i in range(len(x))
        for j in range(len(x))
    )


def all_klabels_up_to(datum, coord_cap):
    axes = []
    for kind in datum.k.atoms:
        if kind == CYCLIC2:
            axes.append([0, 1])
        elif kind == TORUS1:
            axes.append(list(range(-coord_cap, coord_cap + 1)))
        else:
            axes.append(list(range(0, coord_cap + 1)))
    return [tuple(label) for label in itertools.product(*axes)]


def minimal_ktypes_by_sweep(datum, sigma_rep, coord_cap=30):
    """Exhaustive minimum of the Vogan norm over supported K-types."""
    hits = [
        (norm_oracle(datum, tau), tau)
        for tau in all_klabels_up_to(datum, coord_cap)
        if mult_in_induced_oracle(datum, sigma_rep, tau) > 0
    ]
    best = min(norm for norm, _ in hits)
    return tuple(sorted(tau for norm, tau in hits if norm == best))


def _pairing(gram, x, y):
    return sum(
        Fraction(x[i]) * gram[i][j] * y[j]
        for i in range(len(x))
        for j in range(len(x))
    )


def _partition_count(roots, target, gram, direction):
    """Count nonnegative-integer expressions of target over roots by DFS."""
    if not roots:
        return 1 if all(c == 0 for c in target) else 0
    beta = roots[0]
    step = _pairing(gram, beta, direction)
    assert step > 0
    total = 0
    k = 0
    while _pairing(gram, target, direction) - k * step >= 0:
        reduced = tuple(t - k * b for t, b in zip(target, beta))
        total += _partition_count(roots[1:], reduced, gram, direction)
        k += 1
    return total


def blattner_by_enumeration(datum, lam, tau):
    """Alternating Weyl sum with direct partition enumeration, no caching."""
    ds = datum.ds
    gram = datum.gram
    dim = len(lam)
    pos = [
        beta
        for beta in ds.noncompact_roots
        if _pairing(gram, beta, lam) > 0
    ]
    doubled = [tuple(2 * c for c in beta) for beta in pos]
    base = tuple(
        2 * lam[i] + sum(beta[i] for beta in pos) for i in range(dim)
    )
    coords = [v for kind, v in zip(datum.k.atoms, tau) if kind != CYCLIC2]
    shifted = tuple(2 * coords[i] + datum.two_rho_c[i] for i in range(dim))
    total = 0
    for w in ds.weyl_k:
        moved = tuple(
            sum(w[i][j] * shifted[j] for j in range(dim)) for i in range(dim)
        )
        det = _signed_perm_det(w)
        target = tuple(m - b for m, b in zip(moved, base))
        total += det * _partition_count(doubled, target, gram, lam)
    return total


def _signed_perm_det(matrix):
    n = len(matrix)
    perm = []
    prod = 1
    for row in matrix:
        ((j, v),) = [(j, v) for j, v in enumerate(row) if v != 0]
        perm.append(j)
        prod *= v
    sign = 1
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign * prod
