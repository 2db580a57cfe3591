"""Tempered-dual bookkeeping at continuous parameter zero.

Principal-series blocks are orbits of M-types under the restricted Weyl
action; their constituents are identified with minimal K-types, and the
constituent count is defined as the number of minimal K-types (one or
two in rank one).  Equal-rank groups also carry discrete series,
enumerated by regular lattice parameters up to the compact Weyl group,
with K-type multiplicities from the alternating partition-count formula.

All enumeration is deterministic and exhaustive below explicit bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .branching import mult_space_dim, support_sigmas
from .catalog import GroupDatum, apply_matrix, signed_perm_det, weyl_image
from .weights import (
    FormalSum,
    enumerate_ktypes,
    gram_pairing,
    label_lattice_coords,
    lattice_coords_to_label,
    validate_label,
    vogan_norm,
    _coordinate_caps,
)

# Exhaustive minimal-K-type sweeps abort above this norm; reaching it means
# the catalog data cannot support a minimal K-type at all.
SWEEP_CEILING = Fraction(40000)


class InternalInconsistencyError(RuntimeError):
    """A structural expectation failed; signals corrupt catalog data."""


@dataclass(frozen=True)
class PrincipalClass:
    """An orbit {sigma, w.sigma} of M-types, with its stabilizer order.

    The stabilizer of the class in the rank-one restricted Weyl group
    (which is Z/2) has order 2 exactly when the orbit is a singleton.
    """

    orbit: tuple[tuple[int, ...], ...]
    w_sigma_order: int

    @property
    def representative(self) -> tuple[int, ...]:
        return self.orbit[-1]

    def describe(self) -> str:
        members = "|".join(format_label(s) for s in self.orbit)
        return f"{{{members}}}"


@dataclass(frozen=True)
class TempiricRep:
    """A tempered representative with real infinitesimal character.

    Either a discrete series (``kind == "ds"``, classified by its lattice
    parameter, with ``min_ktype`` the lowest K-type) or a constituent of a
    parameter-zero principal series (``kind == "ps"``, pinned down by its
    minimal K-type; ``split`` marks the two-constituent case).
    """

    kind: str
    min_ktype: tuple[int, ...]
    hc_param: tuple[int, ...] | None = None
    ps_class: PrincipalClass | None = None
    split: bool = False

    def describe(self) -> str:
        if self.kind == "ds":
            return (
                f"DS(lambda={format_label(self.hc_param)},"
                f"Lambda={format_label(self.min_ktype)})"
            )
        tag = ",split" if self.split else ""
        return (
            f"PS(sigma={self.ps_class.describe()},"
            f"min={format_label(self.min_ktype)}{tag})"
        )

    def sort_key(self):
        if self.kind == "ds":
            return (self.min_ktype, 0, self.hc_param)
        return (self.min_ktype, 1, self.ps_class.orbit)


def format_label(label) -> str:
    return "(" + ",".join(str(v) for v in label) + ")"


def make_principal_class(datum: GroupDatum, sigma) -> PrincipalClass:
    sigma = validate_label(datum.m, sigma)
    image = weyl_image(datum, sigma)
    orbit = tuple(sorted({sigma, image}))
    return PrincipalClass(orbit=orbit, w_sigma_order=2 if len(orbit) == 1 else 1)


def principal_classes(datum: GroupDatum, kwindow) -> list[PrincipalClass]:
    """All orbit classes supported by some K-type of the window."""
    seen: dict[tuple, PrincipalClass] = {}
    for tau in kwindow:
        for sigma in support_sigmas(datum, FormalSum.single(tau)):
            cls = make_principal_class(datum, sigma)
            seen[cls.orbit] = cls
    return [seen[orbit] for orbit in sorted(seen, key=lambda o: o[-1])]


def induced_ktype_mult(datum: GroupDatum, cls: PrincipalClass, tau) -> int:
    """Multiplicity of tau in the parameter-zero principal series of the class.

    By Frobenius reciprocity this is the multiplicity-space dimension
    against the fixed orbit representative, independent of the continuous
    parameter.
    """
    return mult_space_dim(datum, cls.representative, FormalSum.single(tau))


def minimal_ktypes(datum: GroupDatum, cls: PrincipalClass) -> tuple[tuple[int, ...], ...]:
    """The K-types of minimal Vogan norm occurring in the class.

    The sweep is exhaustive over every K-type of norm at most the first
    candidate's, so the minimum is certified rather than heuristic.
    """
    bound = Fraction(16)
    while bound <= SWEEP_CEILING:
        best_norm = None
        minima = []
        for tau in enumerate_ktypes(datum, bound):
            norm = vogan_norm(datum, tau)
            if best_norm is not None and norm > best_norm:
                break
            if induced_ktype_mult(datum, cls, tau) > 0:
                best_norm = norm
                minima.append(tau)
        if minima:
            return tuple(minima)
        bound *= 2
    raise InternalInconsistencyError(
        f"no K-type found for class {cls.describe()} below norm {SWEEP_CEILING}"
    )


def constituents(datum: GroupDatum, cls: PrincipalClass) -> list[TempiricRep]:
    """One constituent per minimal K-type of the class (one or two)."""
    minima = minimal_ktypes(datum, cls)
    if len(minima) > 2:
        raise InternalInconsistencyError(
            f"class {cls.describe()} has {len(minima)} minimal K-types; "
            "rank one allows at most two"
        )
    for tau in minima:
        mult = induced_ktype_mult(datum, cls, tau)
        if mult != 1:
            raise InternalInconsistencyError(
                f"minimal K-type {format_label(tau)} of class {cls.describe()} "
                f"has multiplicity {mult}, expected 1"
            )
    split = len(minima) == 2
    return [
        TempiricRep(kind="ps", min_ktype=tau, ps_class=cls, split=split)
        for tau in minima
    ]


def _require_ds(datum: GroupDatum):
    if not datum.equal_rank or datum.ds is None:
        raise ValueError(f"group {datum.name} has no discrete series (unequal rank)")
    return datum.ds


def is_regular(datum: GroupDatum, lam) -> bool:
    """No compact or noncompact root vanishes on the parameter."""
    ds = _require_ds(datum)
    roots = list(ds.compact_pos_roots) + list(ds.noncompact_roots)
    return all(gram_pairing(datum.gram, alpha, lam) != 0 for alpha in roots)


def positive_noncompact_roots(datum: GroupDatum, lam) -> tuple[tuple[int, ...], ...]:
    """The noncompact roots positive on the parameter's chamber."""
    ds = _require_ds(datum)
    pos = tuple(
        sorted(
            beta
            for beta in ds.noncompact_roots
            if gram_pairing(datum.gram, beta, lam) > 0
        )
    )
    if 2 * len(pos) != len(ds.noncompact_roots):
        raise InternalInconsistencyError(
            f"parameter {lam} lies on a noncompact root wall"
        )
    return pos


def blattner_parameter(datum: GroupDatum, lam) -> tuple[int, ...]:
    """Lowest K-type label of the discrete series with the given parameter.

    Computed per chamber as lambda + rho_n - rho_c; the result must be a
    dominant label, which is checked.
    """
    pos = positive_noncompact_roots(datum, lam)
    dim = datum.k.lattice_dim
    # doubled coordinates keep everything integral
    two_rho_n = tuple(sum(beta[i] for beta in pos) for i in range(dim))
    doubled = tuple(
        2 * lam[i] + two_rho_n[i] - datum.two_rho_c[i] for i in range(dim)
    )
    if any(c % 2 for c in doubled):
        raise InternalInconsistencyError(
            f"lowest K-type of parameter {lam} is not integral"
        )
    try:
        return lattice_coords_to_label(datum.k, tuple(c // 2 for c in doubled))
    except ValueError as exc:
        raise InternalInconsistencyError(
            f"lowest K-type of parameter {lam} is not dominant: {exc}"
        ) from None


def _canonical_orbit_rep(datum: GroupDatum, lam) -> tuple[int, ...]:
    ds = datum.ds
    return max(apply_matrix(w, lam) for w in ds.weyl_k)


def ds_enumerate(datum: GroupDatum, bound) -> list[TempiricRep]:
    """Discrete series with lowest K-type norm <= bound, one per Weyl orbit.

    Deterministic order: by (norm of lowest K-type, lowest K-type,
    parameter).
    """
    ds = _require_ds(datum)
    bound = Fraction(bound)
    if bound < 0:
        return []
    dim = datum.k.lattice_dim
    caps = _coordinate_caps(datum.gram, bound)
    # box wide enough that any parameter mapping into the window lies inside:
    # |Lambda_i| <= cap_i + |2rho_c_i| and the chamber shift is bounded by
    # half the total coordinate mass of the noncompact roots.
    half_shift = [
        (sum(abs(beta[i]) for beta in ds.noncompact_roots) + 1) // 2
        for i in range(dim)
    ]
    radii = [
        caps[i] + 2 * abs(datum.two_rho_c[i]) + half_shift[i] for i in range(dim)
    ]
    found: dict[tuple[int, ...], TempiricRep] = {}
    order = []
    for lam in itertools.product(*(range(-r, r + 1) for r in radii)):
        if not is_regular(datum, lam):
            continue
        if lam != _canonical_orbit_rep(datum, lam):
            continue
        lowest = blattner_parameter(datum, lam)
        norm = vogan_norm(datum, lowest)
        if norm > bound:
            continue
        rep = TempiricRep(kind="ds", min_ktype=lowest, hc_param=lam)
        if lowest in found:
            raise InternalInconsistencyError(
                f"parameters {found[lowest].hc_param} and {lam} share lowest K-type "
                f"{format_label(lowest)}"
            )
        found[lowest] = rep
        order.append((norm, lowest, lam))
    order.sort()
    return [found[lowest] for _, lowest, _ in order]


# Counts of expressions of a target as a nonnegative-integer combination of a
# fixed root tuple depend only on (roots, target); the cache is shared across
# chambers and parameters.
_EXPRESSION_COUNTS: dict[tuple, dict[tuple, int]] = {}


def _count_expressions(roots, target, pairings, budget) -> int:
    """Number of ways to write target as a nonnegative combination of roots.

    ``pairings`` are strictly positive values of a linear functional on the
    roots and ``budget`` its value on the target; they only bound the
    search and do not affect the count.
    """
    memo = _EXPRESSION_COUNTS.setdefault(roots, {})

    def rec(idx: int, vec, value: Fraction) -> int:
        if value < 0:
            return 0
        if idx == len(roots):
            return 1 if all(c == 0 for c in vec) else 0
        key = (idx, vec)
        cached = memo.get(key)
        if cached is not None:
            return cached
        beta = roots[idx]
        step = pairings[idx]
        total = 0
        k = 0
        current = vec
        remaining = value
        while remaining >= 0:
            total += rec(idx + 1, current, remaining)
            k += 1
            current = tuple(c - b for c, b in zip(current, beta))
            remaining = value - k * step
        memo[key] = total
        return total

    return rec(0, target, budget)


@lru_cache(maxsize=None)
def _chamber_data(datum: GroupDatum, lam):
    # Per-parameter data reused across every K-type: doubled positive
    # noncompact roots, the bounding functional G.lambda evaluated on them,
    # the shifted base point, and the Weyl determinants.
    pos = positive_noncompact_roots(datum, lam)
    dim = datum.k.lattice_dim
    doubled_roots = tuple(tuple(2 * c for c in beta) for beta in pos)
    functional = tuple(
        sum(datum.gram[i][j] * lam[j] for j in range(dim)) for i in range(dim)
    )
    pairings = tuple(
        sum(b * f for b, f in zip(beta, functional)) for beta in doubled_roots
    )
    two_rho_n = tuple(sum(beta[i] for beta in pos) for i in range(dim))
    base = tuple(2 * lam[i] + two_rho_n[i] for i in range(dim))
    dets = tuple(signed_perm_det(w) for w in datum.ds.weyl_k)
    return doubled_roots, pairings, base, functional, dets


def blattner_mult(datum: GroupDatum, ds_rep: TempiricRep, tau) -> int:
    """K-type multiplicity in a discrete series.

    Alternating sum over the compact Weyl group of partition counts over
    the chamber's positive noncompact roots, evaluated in doubled
    coordinates so that all arithmetic stays integral.  A negative total
    signals inconsistent catalog data and raises.
    """
    if ds_rep.kind != "ds":
        raise ValueError("blattner_mult expects a discrete-series representative")
    ds = _require_ds(datum)
    lam = ds_rep.hc_param
    doubled_roots, pairings, base, functional, dets = _chamber_data(datum, lam)
    dim = datum.k.lattice_dim
    mu = label_lattice_coords(datum.k, tau)
    shifted = tuple(2 * mu[i] + datum.two_rho_c[i] for i in range(dim))
    total = 0
    for w, det in zip(ds.weyl_k, dets):
        moved = apply_matrix(w, shifted)
        target = tuple(m - b for m, b in zip(moved, base))
        budget = sum(t * f for t, f in zip(target, functional))
        total += det * _count_expressions(
            doubled_roots, target, pairings, budget
        )
    if total < 0:
        raise InternalInconsistencyError(
            f"negative multiplicity {total} for {format_label(tau)} in "
            f"{ds_rep.describe()}"
        )
    return total


def tempiric_window(datum: GroupDatum, bound):
    """The K-type window and every tempered representative minimal there.

    Returns (ktypes, representatives); representatives are sorted by
    (norm of minimal K-type, minimal K-type, kind) so they align with the
    window rows under the minimal-K-type bijection.
    """
    bound = Fraction(bound)
    rows = enumerate_ktypes(datum, bound)
    reps: list[TempiricRep] = []
    for cls in principal_classes(datum, rows):
        reps.extend(constituents(datum, cls))
    if datum.equal_rank:
        reps.extend(ds_enumerate(datum, bound))
    reps.sort(key=lambda r: (vogan_norm(datum, r.min_ktype),) + r.sort_key())
    return rows, reps
