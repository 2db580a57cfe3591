"""Assembly and verification layer for the multiplicity matrix.

Builds the sparse K-type-by-tempered-representative multiplicity matrix
on a finite norm window, certifies the minimal-K-type bijection and the
unit-diagonal lower-triangularity of the induced map on representation
rings, inverts exact windows over the integers, and checks the boundary
dimension identities behind the rank-one Fourier decomposition.

All arithmetic here is exact; there is no floating point and no
tolerance anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .branching import mult_space_dim, restrict_sum, support_sigmas
from .catalog import GroupDatum
from .tempered import (
    InternalInconsistencyError,
    PrincipalClass,
    TempiricRep,
    blattner_mult,
    ds_enumerate,
    format_label,
    induced_ktype_mult,
    make_principal_class,
    tempiric_window,
)
from .weights import (
    CYCLIC2,
    TORUS1,
    FormalSum,
    enumerate_ktypes,
    hom_invariant_dim,
    invert_rational_matrix,
    labels_in_box,
    vogan_norm,
)

EXACT = "exact"
AGGREGATE_ONLY = "aggregate-only"

DEFAULT_SEED = 1729


class WindowError(ValueError):
    """The requested computation depends on data outside the window."""


class UnresolvedColumnsError(RuntimeError):
    """Inversion refused: some columns carry only aggregate multiplicities."""

    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(
            "cannot invert: aggregate-only columns " + ", ".join(self.columns)
        )


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one machine check; failures carry a counterexample."""

    name: str
    passed: bool
    counterexample: dict | None = None
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and not self.counterexample:
            raise ValueError("a failing report must carry a counterexample")


@dataclass
class MultMatrix:
    """Sparse integer matrix over (K-type window) x (tempered window).

    Rows are ordered by (norm, label); columns align with rows through
    the minimal-K-type bijection.  Aggregate-only columns belong to
    unresolved split pairs: away from the two minimal K-types they carry
    the full induced multiplicity shared by the pair, and at the minima
    they are exact (1 at the column's own minimum, 0 at the partner's).
    """

    rows: tuple
    cols: tuple
    entries: dict
    resolution: tuple

    def entry(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def dense(self):
        return [
            [self.entry(i, j) for j in range(len(self.cols))]
            for i in range(len(self.rows))
        ]


def _split_resolvable(datum: GroupDatum) -> bool:
    # The two split constituents partition the odd character ladder by
    # sign exactly when K is a single circle.
    return datum.k.atoms == (TORUS1,)


def _partner_minimum(rep: TempiricRep, reps) -> tuple:
    for other in reps:
        if (
            other.kind == "ps"
            and other.ps_class == rep.ps_class
            and other.min_ktype != rep.min_ktype
        ):
            return other.min_ktype
    raise InternalInconsistencyError(
        f"split constituent {rep.describe()} has no partner in the window"
    )


def mult_matrix(datum: GroupDatum, bound) -> MultMatrix:
    """Multiplicity matrix of the window at the given norm bound."""
    rows, reps = tempiric_window(datum, bound)
    row_index = {tau: i for i, tau in enumerate(rows)}
    entries: dict = {}
    resolution = []
    for j, rep in enumerate(reps):
        if rep.kind == "ds":
            resolution.append(EXACT)
            for tau, i in row_index.items():
                v = blattner_mult(datum, rep, tau)
                if v:
                    entries[(i, j)] = v
            continue
        cls = rep.ps_class
        if not rep.split:
            resolution.append(EXACT)
            for tau, i in row_index.items():
                v = induced_ktype_mult(datum, cls, tau)
                if v:
                    entries[(i, j)] = v
            continue
        if _split_resolvable(datum):
            resolution.append(EXACT)
            sign = 1 if rep.min_ktype[0] > 0 else -1
            for tau, i in row_index.items():
                if tau[0] * sign <= 0:
                    continue
                v = induced_ktype_mult(datum, cls, tau)
                if v:
                    entries[(i, j)] = v
            continue
        resolution.append(AGGREGATE_ONLY)
        partner = _partner_minimum(rep, reps)
        for tau, i in row_index.items():
            if tau == rep.min_ktype:
                entries[(i, j)] = 1
            elif tau == partner:
                continue
            else:
                v = induced_ktype_mult(datum, cls, tau)
                if v:
                    entries[(i, j)] = v
    return MultMatrix(
        rows=tuple(rows),
        cols=tuple(reps),
        entries=entries,
        resolution=tuple(resolution),
    )


def vogan_bijection_check(datum: GroupDatum, bound) -> VerificationReport:
    """Minimal K-types biject window representatives with window K-types.

    Passes when the assignment representative -> minimal K-type is
    injective, covers the whole K-type window, and each minimum occurs
    with multiplicity exactly one.
    """
    matrix = mult_matrix(datum, bound)
    name = "vogan_bijection"
    seen: dict[tuple, TempiricRep] = {}
    for rep in matrix.cols:
        if rep.min_ktype in seen:
            return VerificationReport(
                name,
                False,
                counterexample={
                    "ktype": format_label(rep.min_ktype),
                    "representatives": [
                        seen[rep.min_ktype].describe(),
                        rep.describe(),
                    ],
                    "reason": "two representatives share a minimal K-type",
                },
            )
        seen[rep.min_ktype] = rep
    missing = [tau for tau in matrix.rows if tau not in seen]
    if missing:
        return VerificationReport(
            name,
            False,
            counterexample={
                "ktype": format_label(missing[0]),
                "reason": "K-type is not minimal in any window representative",
            },
        )
    extra = [rep for rep in matrix.cols if rep.min_ktype not in matrix.rows]
    if extra:
        return VerificationReport(
            name,
            False,
            counterexample={
                "representative": extra[0].describe(),
                "reason": "minimal K-type escapes the window",
            },
        )
    row_index = {tau: i for i, tau in enumerate(matrix.rows)}
    for j, rep in enumerate(matrix.cols):
        mult = matrix.entry(row_index[rep.min_ktype], j)
        if mult != 1:
            return VerificationReport(
                name,
                False,
                counterexample={
                    "representative": rep.describe(),
                    "multiplicity": mult,
                    "reason": "minimal K-type multiplicity differs from 1",
                },
            )
    return VerificationReport(
        name, True, data={"ktypes": len(matrix.rows), "representatives": len(matrix.cols)}
    )


def triangularity_check(datum: GroupDatum, bound) -> VerificationReport:
    """Unit entries at minima and vanishing strictly below them in norm.

    Aggregate entries of unresolved split columns are held to the same
    vanishing requirement, which is stronger than resolving them would
    demand.
    """
    matrix = mult_matrix(datum, bound)
    name = "triangularity"
    norms = [vogan_norm(datum, tau) for tau in matrix.rows]
    row_index = {tau: i for i, tau in enumerate(matrix.rows)}
    for j, rep in enumerate(matrix.cols):
        pivot = row_index.get(rep.min_ktype)
        if pivot is None:
            return VerificationReport(
                name,
                False,
                counterexample={
                    "representative": rep.describe(),
                    "reason": "minimal K-type not in the window",
                },
            )
        if matrix.entry(pivot, j) != 1:
            return VerificationReport(
                name,
                False,
                counterexample={
                    "representative": rep.describe(),
                    "entry": matrix.entry(pivot, j),
                    "reason": "diagonal entry differs from 1",
                },
            )
        min_norm = norms[pivot]
        for i, tau in enumerate(matrix.rows):
            if norms[i] < min_norm and matrix.entry(i, j) != 0:
                return VerificationReport(
                    name,
                    False,
                    counterexample={
                        "representative": rep.describe(),
                        "ktype": format_label(tau),
                        "entry": matrix.entry(i, j),
                        "reason": "nonzero entry below the minimal norm",
                    },
                )
    return VerificationReport(name, True, data={"columns": len(matrix.cols)})


def composite_map(datum: GroupDatum, tau, bound) -> FormalSum:
    """Image of a K-type in the free group on window representatives.

    The coefficients are the matrix entries of the K-type's row.  The
    window must contain the K-type; triangularity then guarantees every
    representative it meets is present, so nothing is silently truncated.
    """
    bound = Fraction(bound)
    if vogan_norm(datum, tau) > bound:
        raise WindowError(
            f"K-type {format_label(tau)} has norm above the window bound {bound}"
        )
    matrix = mult_matrix(datum, bound)
    i = matrix.rows.index(tuple(tau))
    return FormalSum(
        {rep: matrix.entry(i, j) for j, rep in enumerate(matrix.cols)}
    )


def invert_window(matrix: MultMatrix):
    """Exact integer inverse of a fully resolved window matrix.

    Refuses when any column is aggregate-only, naming the culprits.  A
    singular or non-integer outcome would contradict the certified
    triangularity and raises as an internal error.  Both products with
    the inverse are verified to be the identity, exactly.
    """
    aggregate = [
        matrix.cols[j].describe()
        for j, flag in enumerate(matrix.resolution)
        if flag == AGGREGATE_ONLY
    ]
    if aggregate:
        raise UnresolvedColumnsError(aggregate)
    n = len(matrix.rows)
    if len(matrix.cols) != n:
        raise InternalInconsistencyError(
            f"window is not square: {n} K-types, {len(matrix.cols)} representatives"
        )
    dense = [[Fraction(v) for v in row] for row in matrix.dense()]
    try:
        inverse = invert_rational_matrix(dense)
    except ZeroDivisionError:
        raise InternalInconsistencyError(
            "window matrix is singular despite certified triangularity"
        ) from None
    out = []
    for row in inverse:
        int_row = []
        for v in row:
            if v.denominator != 1:
                raise InternalInconsistencyError(
                    "window inverse is not integral despite unit diagonal"
                )
            int_row.append(int(v))
        out.append(int_row)
    forward = matrix.dense()
    for a, b in ((forward, out), (out, forward)):
        for i in range(n):
            for j in range(n):
                total = sum(a[i][t] * b[t][j] for t in range(n))
                if total != int(i == j):
                    raise InternalInconsistencyError("inverse verification failed")
    return out


def dimension_identity_check(datum: GroupDatum, v1: FormalSum, v2: FormalSum) -> VerificationReport:
    """Boundary dimension count against the M-isotypic pairing.

    Left side: invariant Hom dimension of the two restrictions over M.
    Right side: sum over M-types of the product of multiplicity-space
    dimensions.  The two are computed by independent routes and must
    agree exactly.
    """
    r1 = restrict_sum(datum, v1)
    r2 = restrict_sum(datum, v2)
    lhs = hom_invariant_dim(datum.m, r1, r2)
    sigmas = set(support_sigmas(datum, v1)) | set(support_sigmas(datum, v2))
    rhs = sum(
        mult_space_dim(datum, s, v1) * mult_space_dim(datum, s, v2)
        for s in sigmas
    )
    passed = lhs == rhs
    payload = {"lhs": lhs, "rhs": rhs}
    return VerificationReport(
        "dimension_identity",
        passed,
        counterexample=None if passed else {
            "v1": sorted(v1.items()),
            "v2": sorted(v2.items()),
            **payload,
        },
        data=payload,
    )


def boundary_block_dims(datum: GroupDatum, v1: FormalSum, v2: FormalSum):
    """Boundary morphism-space dimension per tempered block.

    Discrete-series blocks have no boundary and contribute 0 (reported as
    one aggregated block).  A principal class contributes the product of
    its multiplicity-space dimensions, summed over the orbit: one term
    when the stabilizer has order two, two when the orbit has two
    members.  Blocks are listed for every orbit meeting the support of
    either argument; when the M-dual is finite all orbits are listed.
    """
    blocks = []
    if datum.equal_rank:
        blocks.append(("discrete-series", 0))
    sigmas = set(support_sigmas(datum, v1)) | set(support_sigmas(datum, v2))
    if all(kind == CYCLIC2 for kind in datum.m.atoms):
        sigmas |= set(labels_in_box(datum.m, 0))
    orbits: dict[tuple, PrincipalClass] = {}
    for sigma in sigmas:
        cls = make_principal_class(datum, sigma)
        orbits[cls.orbit] = cls
    for orbit in sorted(orbits, key=lambda o: o[-1]):
        cls = orbits[orbit]
        d = sum(
            mult_space_dim(datum, s, v1) * mult_space_dim(datum, s, v2)
            for s in cls.orbit
        )
        blocks.append((cls, d))
    return blocks


def admissibility_check(datum: GroupDatum, v: FormalSum) -> VerificationReport:
    """The computed support is finite and exhaustive under a brute sweep.

    Sweeps every M-label within a coordinate box extending well past the
    support and confirms no multiplicity space survives outside it.
    """
    support = support_sigmas(datum, v)
    cap = 8
    for sigma in support:
        cap = max(cap, max((abs(c) for c in sigma), default=0) + 8)
    for tau in v:
        cap = max(cap, max((abs(c) for c in tau), default=0) + 8)
    stray = []
    for sigma in labels_in_box(datum.m, cap):
        inside = sigma in support
        positive = mult_space_dim(datum, sigma, v) > 0
        if positive != inside:
            stray.append(sigma)
    passed = not stray
    return VerificationReport(
        "admissibility",
        passed,
        counterexample=None if passed else {
            "sigma": format_label(stray[0]),
            "support": [format_label(s) for s in support],
        },
        data={"support": [format_label(s) for s in support], "sweep_cap": cap},
    )


def blattner_consistency_check(datum: GroupDatum, bound) -> VerificationReport:
    """Root-data and lowest-K-type consistency for the discrete series.

    Recomputes two_rho_c from the positive compact roots, then checks
    that every enumerated series has multiplicity one at its lowest
    K-type and zero at every window K-type of strictly smaller norm.
    Vacuous for unequal-rank groups.
    """
    name = "blattner_consistency"
    if not datum.equal_rank:
        return VerificationReport(name, True, data={"note": "no discrete series"})
    dim = datum.k.lattice_dim
    recomputed = tuple(
        sum(alpha[i] for alpha in datum.ds.compact_pos_roots) for i in range(dim)
    )
    if recomputed != tuple(datum.two_rho_c):
        return VerificationReport(
            name,
            False,
            counterexample={
                "stored_two_rho_c": list(datum.two_rho_c),
                "sum_of_compact_roots": list(recomputed),
                "reason": "two_rho_c differs from the sum of positive compact roots",
            },
        )
    window = enumerate_ktypes(datum, bound)
    norms = {tau: vogan_norm(datum, tau) for tau in window}
    series = ds_enumerate(datum, bound)
    for rep in series:
        if blattner_mult(datum, rep, rep.min_ktype) != 1:
            return VerificationReport(
                name,
                False,
                counterexample={
                    "representative": rep.describe(),
                    "reason": "lowest K-type multiplicity differs from 1",
                },
            )
        low = norms.get(rep.min_ktype)
        if low is None:
            low = vogan_norm(datum, rep.min_ktype)
        for tau in window:
            if norms[tau] < low and blattner_mult(datum, rep, tau) != 0:
                return VerificationReport(
                    name,
                    False,
                    counterexample={
                        "representative": rep.describe(),
                        "ktype": format_label(tau),
                        "reason": "nonzero multiplicity below the lowest K-type",
                    },
                )
    return VerificationReport(name, True, data={"series": len(series)})


def random_ktype_sums(datum: GroupDatum, count: int, norm_cap, seed: int):
    """Deterministic pseudo-random formal sums over a K-type window.

    An empty window yields an empty list.
    """
    rng = random.Random(seed)
    pool = enumerate_ktypes(datum, norm_cap)
    if not pool:
        return []
    sums = []
    for _ in range(count):
        size = rng.randint(1, min(3, len(pool)))
        labels = rng.sample(pool, size)
        sums.append(FormalSum({tau: rng.randint(1, 3) for tau in labels}))
    return sums


def ktheory_summary(datum: GroupDatum, bound) -> dict:
    """Window basis, matrix status, and the vanishing odd-degree note.

    The odd K-group is reported as zero because that is a known analytic
    fact about this category; nothing here computes it.
    """
    matrix = mult_matrix(datum, bound)
    triangular = triangularity_check(datum, bound).passed
    refused: list[str] = []
    status = "inverted"
    try:
        invert_window(matrix)
    except UnresolvedColumnsError as exc:
        status = "refused"
        refused = list(exc.columns)
    return {
        "group": datum.name,
        "bound": str(Fraction(bound)),
        "generator_count": len(matrix.cols),
        "generators": [rep.describe() for rep in matrix.cols],
        "triangular": triangular,
        "inverse": status,
        "refused_columns": refused,
        "k1": "0 (vanishes; reported as a known fact, not computed)",
    }
