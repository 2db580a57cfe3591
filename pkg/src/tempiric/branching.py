"""Restriction from K to M for the catalog pairs.

Branching is template based: each catalog entry names one of three rules,
and the rule fixes how a K-label decomposes over M.  Multiplicity-space
dimensions come from the restriction via the dual convention of the
weights module (circle characters dualize by sign flip).
"""

from __future__ import annotations

from .weights import (
    CYCLIC2,
    SO3,
    SU2,
    TORUS1,
    FormalSum,
    dual_label,
    validate_label,
)

PARITY = "parity"
TORUS_RESTRICTION = "torus-restriction"
CLEBSCH_DIAGONAL = "clebsch-diagonal"

# rule id -> (K atom shape, M atom shape)
BRANCHING_RULES = {
    PARITY: ((TORUS1,), (CYCLIC2,)),
    TORUS_RESTRICTION: ((SO3,), (TORUS1,)),
    CLEBSCH_DIAGONAL: ((SU2, SU2), (SU2,)),
}


def restrict_decompose(datum, tau) -> FormalSum:
    """Decomposition of tau restricted to M, as a formal sum of M-labels."""
    tau = validate_label(datum.k, tau)
    rule = datum.branching_rule
    if rule == PARITY:
        (n,) = tau
        return FormalSum({(n % 2,): 1})
    if rule == TORUS_RESTRICTION:
        (j,) = tau
        return FormalSum({(n,): 1 for n in range(-j, j + 1)})
    if rule == CLEBSCH_DIAGONAL:
        a, b = tau
        return FormalSum({(c,): 1 for c in range(abs(a - b), a + b + 1, 2)})
    raise ValueError(f"no branching rule {rule!r} for this group pair")


def restrict_sum(datum, v: FormalSum) -> FormalSum:
    """Restriction of a formal sum of K-labels to M, multiplicities combined."""
    out = FormalSum()
    for tau, mult in v.items():
        out = out + mult * restrict_decompose(datum, tau)
    return out


def mult_space_dim(datum, sigma, v: FormalSum) -> int:
    """dim of the M-invariants of L_sigma (x) V.

    Equals the multiplicity of the dual of sigma in the restriction of V.
    """
    sigma = validate_label(datum.m, sigma)
    sdual = dual_label(datum.m, sigma)
    return restrict_sum(datum, v)[sdual]


def support_sigmas(datum, v: FormalSum) -> tuple[tuple[int, ...], ...]:
    """The finitely many M-types with a nonzero multiplicity space against V.

    Returned sorted for determinism.
    """
    restricted = restrict_sum(datum, v)
    sigmas = {
        dual_label(datum.m, w) for w, mult in restricted.items() if mult > 0
    }
    return tuple(sorted(sigmas))
