"""Exact combinatorics for the compact groups used as K and M.

Groups are finite products of four atom kinds: the circle group
(``Torus1``), the two-element group (``Cyclic2``), ``SU2`` and ``SO3``.
An irreducible representation is labeled by one integer per atom: a
character exponent for ``Torus1``, a bit for ``Cyclic2``, and a
nonnegative highest weight for ``SU2`` (dimension a+1) or ``SO3``
(dimension 2j+1).

Everything is a pure function of immutable data, computed in exact
integer and rational arithmetic.  Results never depend on caching or
call order, so concurrent use needs no coordination.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

TORUS1 = "Torus1"
CYCLIC2 = "Cyclic2"
SU2 = "SU2"
SO3 = "SO3"

ATOM_KINDS = (TORUS1, CYCLIC2, SU2, SO3)


@dataclass(frozen=True)
class CompactGroup:
    """An ordered product of atom kinds.

    Cyclic2 atoms carry a parity bit instead of a weight-lattice
    coordinate, so the lattice dimension counts the other atoms only.
    """

    atoms: tuple[str, ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("atom list must be nonempty")
        for kind in self.atoms:
            if kind not in ATOM_KINDS:
                raise ValueError(f"unknown atom kind {kind!r}")

    @property
    def lattice_dim(self) -> int:
        return sum(1 for kind in self.atoms if kind != CYCLIC2)


def validate_label(group: CompactGroup, label) -> tuple[int, ...]:
    """Check that ``label`` is a valid irreducible label for ``group``."""
    label = tuple(label)
    if len(label) != len(group.atoms):
        raise ValueError(
            f"label {label!r} has {len(label)} entries, group has {len(group.atoms)} atoms"
        )
    for kind, v in zip(group.atoms, label):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"label entry {v!r} for {kind} atom is not an integer")
        if kind == CYCLIC2 and v not in (0, 1):
            raise ValueError(f"Cyclic2 label must be 0 or 1, got {v}")
        if kind in (SU2, SO3) and v < 0:
            raise ValueError(f"{kind} label must be nonnegative, got {v}")
    return label


def _atom_dim(kind: str, v: int) -> int:
    if kind == SU2:
        return v + 1
    if kind == SO3:
        return 2 * v + 1
    return 1


def _atom_weights(kind: str, v: int):
    # Weight values in the atom's own coordinate; for Cyclic2 the "weight"
    # is the parity bit itself, constant across the (1-dimensional) irrep.
    if kind == SU2:
        return range(-v, v + 1, 2)
    if kind == SO3:
        return range(-v, v + 1)
    return (v,)


def _atom_tensor(kind: str, a: int, b: int) -> dict[int, int]:
    if kind == TORUS1:
        return {a + b: 1}
    if kind == CYCLIC2:
        return {(a + b) % 2: 1}
    if kind == SU2:
        return {c: 1 for c in range(abs(a - b), a + b + 1, 2)}
    return {j: 1 for j in range(abs(a - b), a + b + 1)}


class FormalSum:
    """A finite integer combination of labels.

    Keys are arbitrary hashable labels (tuples, tempered-representation
    records, ...); values are nonzero integers.  Lookup of an absent key
    yields 0.  Addition and integer scaling act componentwise.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        data = terms.items() if isinstance(terms, (dict, FormalSum)) else terms
        acc: dict = {}
        for key, mult in data:
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise TypeError(f"multiplicity {mult!r} is not an integer")
            acc[key] = acc.get(key, 0) + mult
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def single(cls, key, mult: int = 1) -> "FormalSum":
        return cls([(key, mult)])

    def items(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def __getitem__(self, key) -> int:
        return self._terms.get(key, 0)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._terms)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return FormalSum(out)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-1) * other

    def __mul__(self, n: int) -> "FormalSum":
        if not isinstance(n, int):
            return NotImplemented
        return FormalSum({k: n * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if isinstance(other, dict):
            return self._terms == {k: v for k, v in other.items() if v != 0}
        return NotImplemented

    def __repr__(self) -> str:
        try:
            body = ", ".join(f"{k!r}: {v}" for k, v in sorted(self._terms.items()))
        except TypeError:
            body = ", ".join(f"{k!r}: {v}" for k, v in self._terms.items())
        return f"FormalSum({{{body}}})"

    def has_negative(self) -> bool:
        return any(v < 0 for v in self._terms.values())


def weyl_dim(group: CompactGroup, tau) -> int:
    """Dimension of the irreducible with label ``tau``."""
    tau = validate_label(group, tau)
    d = 1
    for kind, v in zip(group.atoms, tau):
        d *= _atom_dim(kind, v)
    return d


def weights_of(group: CompactGroup, tau) -> Counter:
    """Full weight multiset of ``tau`` as a Counter of per-atom tuples.

    Cyclic2 entries carry the parity bit, constant across the irrep; the
    total count equals ``weyl_dim``.
    """
    tau = validate_label(group, tau)
    axes = [_atom_weights(kind, v) for kind, v in zip(group.atoms, tau)]
    return Counter(itertools.product(*axes))


def tensor_decompose(group: CompactGroup, tau1, tau2) -> FormalSum:
    """Decomposition of the tensor product of two irreducibles."""
    tau1 = validate_label(group, tau1)
    tau2 = validate_label(group, tau2)
    factors = [
        _atom_tensor(kind, a, b) for kind, a, b in zip(group.atoms, tau1, tau2)
    ]
    out: dict[tuple[int, ...], int] = {}
    for combo in itertools.product(*(f.items() for f in factors)):
        label = tuple(k for k, _ in combo)
        mult = 1
        for _, m in combo:
            mult *= m
        out[label] = out.get(label, 0) + mult
    return FormalSum(out)


def dual_label(group: CompactGroup, tau) -> tuple[int, ...]:
    """Label of the dual irreducible.

    Circle characters dualize by negating the exponent; the other atom
    kinds are self-dual.
    """
    tau = validate_label(group, tau)
    return tuple(
        -v if kind == TORUS1 else v for kind, v in zip(group.atoms, tau)
    )


def hom_invariant_dim(group: CompactGroup, v1: FormalSum, v2: FormalSum) -> int:
    """dim Hom(V1, V2)^G for two nonnegative formal sums of irreducibles.

    By Schur's lemma this is the pairing of isotypic multiplicities.  It
    equals the invariant dimension of dual(V1) (x) V2, with the circle
    duality n -> -n applied to the first argument.
    """
    for v in (v1, v2):
        if v.has_negative():
            raise ValueError("hom_invariant_dim requires nonnegative multiplicities")
        for tau in v:
            validate_label(group, tau)
    return sum(m * v2[tau] for tau, m in v1.items())


def dim_of_sum(group: CompactGroup, v: FormalSum) -> int:
    return sum(m * weyl_dim(group, tau) for tau, m in v.items())


def label_lattice_coords(group: CompactGroup, tau) -> tuple[int, ...]:
    """Highest weight of ``tau`` in the group's lattice coordinates."""
    tau = validate_label(group, tau)
    return tuple(v for kind, v in zip(group.atoms, tau) if kind != CYCLIC2)


def lattice_coords_to_label(group: CompactGroup, coords) -> tuple[int, ...]:
    """Dominant label with the given lattice coordinates.

    Fails if the group has parity atoms (the coordinates do not determine
    the bit) or if a coordinate is negative on an SU2/SO3 atom.
    """
    coords = list(coords)
    if len(coords) != group.lattice_dim:
        raise ValueError("coordinate length does not match lattice dimension")
    label = []
    it = iter(coords)
    for kind in group.atoms:
        if kind == CYCLIC2:
            raise ValueError("group with a Cyclic2 atom has no coordinate-only labels")
        c = next(it)
        if kind in (SU2, SO3) and c < 0:
            raise ValueError(f"coordinate {c} is not dominant for a {kind} atom")
        label.append(c)
    return validate_label(group, label)


def gram_pairing(gram, x, y) -> Fraction:
    """Bilinear form <x, y> for a rational Gram matrix."""
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = gram[i]
        for j, yj in enumerate(y):
            if yj:
                total += Fraction(xi) * row[j] * yj
    return total


def vogan_norm(datum, tau) -> Fraction:
    """Squared length of (highest weight + sum of positive compact roots).

    The quadratic form is the catalog's Gram matrix; the shift is the
    catalog's ``two_rho_c`` vector.
    """
    mu = label_lattice_coords(datum.k, tau)
    x = tuple(m + r for m, r in zip(mu, datum.two_rho_c))
    return gram_pairing(datum.gram, x, x)


def invert_rational_matrix(rows):
    """Exact inverse of a square matrix with Fraction entries.

    Raises ZeroDivisionError on a singular matrix.
    """
    n = len(rows)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [v * inv_p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _floor_sqrt(value: Fraction) -> int:
    # Largest integer t >= 0 with t*t <= value.
    if value < 0:
        raise ValueError("negative value")
    p, q = value.numerator, value.denominator
    t = isqrt(p // q)
    while (t + 1) * (t + 1) * q <= p:
        t += 1
    return t


def _coordinate_caps(gram, bound: Fraction) -> list[int]:
    # max of x_i^2 subject to <x,x> <= B is B * (gram^-1)_ii, so |x_i| is
    # capped by its integer square root.
    inv = invert_rational_matrix(gram)
    return [_floor_sqrt(bound * inv[i][i]) for i in range(len(gram))]


def enumerate_ktypes(datum, bound) -> list[tuple[int, ...]]:
    """All K-types of ``datum`` with Vogan norm <= bound.

    Sorted by (norm, lexicographic label); deterministic and duplicate
    free.  A negative bound yields the empty window.
    """
    bound = Fraction(bound)
    group = datum.k
    if bound < 0:
        return []
    caps = _coordinate_caps(datum.gram, bound)
    axes = []
    lattice_index = 0
    for kind in group.atoms:
        if kind == CYCLIC2:
            axes.append((0, 1))
            continue
        cap = caps[lattice_index]
        shift = datum.two_rho_c[lattice_index]
        lo, hi = -cap - shift, cap - shift
        if kind in (SU2, SO3):
            lo = max(lo, 0)
        axes.append(tuple(range(lo, hi + 1)))
        lattice_index += 1
    window = []
    for label in itertools.product(*axes):
        norm = vogan_norm(datum, label)
        if norm <= bound:
            window.append((norm, label))
    window.sort()
    return [label for _, label in window]


def labels_in_box(group: CompactGroup, cap: int):
    """All labels with every coordinate bounded by ``cap`` in magnitude."""
    axes = []
    for kind in group.atoms:
        if kind == CYCLIC2:
            axes.append((0, 1))
        elif kind == TORUS1:
            axes.append(tuple(range(-cap, cap + 1)))
        else:
            axes.append(tuple(range(0, cap + 1)))
    return itertools.product(*axes)
