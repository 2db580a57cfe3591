"""Catalog of rank-one group data and the JSON group-definition loader.

The structure constants (identification of M, two_rho_c, root data, the
restricted Weyl action on the M-dual) are shipped as data, validated
eagerly on construction.  External definitions use the same JSON schema
that ``serialize`` emits; everything in the format is exact (integers and
"p/q" rational strings, never floats).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .branching import BRANCHING_RULES
from .weights import CYCLIC2, SO3, SU2, TORUS1, CompactGroup

WEYL_RULES = ("identity", "negate-torus")


class CatalogError(ValueError):
    """Raised for unknown groups, malformed documents, or invariant violations."""


@dataclass(frozen=True)
class DiscreteSeriesDatum:
    """Root and Weyl data for the equal-rank (discrete series) case.

    ``compact_pos_roots`` lists the positive compact roots only; their sum
    must equal the group's two_rho_c.  ``noncompact_roots`` lists the full
    set, closed under negation; the positive system, and with it rho_n and
    the lowest-K-type map, is recovered per parameter from root signs.
    Parameters live in the integer lattice and are regular when no listed
    root (compact or noncompact) vanishes on them.
    """

    compact_pos_roots: tuple[tuple[int, ...], ...]
    noncompact_roots: tuple[tuple[int, ...], ...]
    weyl_k: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class GroupDatum:
    """Everything needed to compute with one rank-one group."""

    name: str
    k: CompactGroup
    m: CompactGroup
    branching_rule: str
    gram: tuple[tuple[Fraction, ...], ...]
    two_rho_c: tuple[int, ...]
    weyl_on_mhat: str
    equal_rank: bool
    ds: DiscreteSeriesDatum | None
    a_dim: int = 1


def weyl_image(datum: GroupDatum, sigma) -> tuple[int, ...]:
    """Image of an M-label under the restricted Weyl action on the M-dual."""
    sigma = tuple(sigma)
    if datum.weyl_on_mhat == "identity":
        return sigma
    # negate-torus: flip every circle coordinate, fix the rest
    return tuple(
        -v if kind == TORUS1 else v for kind, v in zip(datum.m.atoms, sigma)
    )


def apply_matrix(matrix, vec) -> tuple:
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in matrix)


def signed_perm_det(matrix) -> int:
    """Determinant of a signed permutation matrix."""
    n = len(matrix)
    perm = []
    prod = 1
    for row in matrix:
        nonzero = [(j, v) for j, v in enumerate(row) if v != 0]
        if len(nonzero) != 1 or nonzero[0][1] not in (1, -1):
            raise CatalogError("wk_elements: entry is not a signed permutation matrix")
        j, v = nonzero[0]
        perm.append(j)
        prod *= v
    if sorted(perm) != list(range(n)):
        raise CatalogError("wk_elements: entry is not a signed permutation matrix")
    sign = 1
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign * prod


def _leading_minor_det(gram, size) -> Fraction:
    rows = [list(gram[i][:size]) for i in range(size)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv_p = 1 / rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] * inv_p
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def _validate(datum: GroupDatum) -> GroupDatum:
    dim = datum.k.lattice_dim
    rule = BRANCHING_RULES.get(datum.branching_rule)
    if rule is None:
        raise CatalogError(f"branching_rule: unknown rule {datum.branching_rule!r}")
    if rule != (datum.k.atoms, datum.m.atoms):
        raise CatalogError(
            f"branching_rule: {datum.branching_rule!r} expects K={rule[0]}, M={rule[1]}, "
            f"got K={datum.k.atoms}, M={datum.m.atoms}"
        )
    if len(datum.gram) != dim or any(len(row) != dim for row in datum.gram):
        raise CatalogError(f"gram: expected a {dim}x{dim} matrix")
    for i in range(dim):
        for j in range(i, dim):
            if datum.gram[i][j] != datum.gram[j][i]:
                raise CatalogError("gram: matrix is not symmetric")
    for size in range(1, dim + 1):
        if _leading_minor_det(datum.gram, size) <= 0:
            raise CatalogError("gram: matrix is not positive-definite")
    if len(datum.two_rho_c) != dim:
        raise CatalogError("two_rho_c: length does not match the lattice dimension")
    if datum.weyl_on_mhat not in WEYL_RULES:
        raise CatalogError(
            f"weyl_on_mhat: unknown rule {datum.weyl_on_mhat!r}; "
            f"expected one of {WEYL_RULES}"
        )
    if datum.equal_rank != (datum.ds is not None):
        raise CatalogError("equal_rank: must hold exactly when ds data is present")
    if datum.a_dim != 1:
        raise CatalogError("a_dim: must be 1 for a rank-one group")
    if datum.ds is not None:
        _validate_ds(datum, dim)
    return datum


def _validate_ds(datum: GroupDatum, dim: int):
    ds = datum.ds
    if CYCLIC2 in datum.k.atoms:
        raise CatalogError("ds: K with a Cyclic2 atom cannot carry discrete-series data")
    for name, roots in (
        ("compact_roots", ds.compact_pos_roots),
        ("noncompact_roots", ds.noncompact_roots),
    ):
        for root in roots:
            if len(root) != dim:
                raise CatalogError(f"ds.{name}: root {root} has wrong length")
    if not ds.noncompact_roots:
        raise CatalogError("ds.noncompact_roots: must be nonempty")
    noncompact = set(ds.noncompact_roots)
    for root in noncompact:
        if tuple(-c for c in root) not in noncompact:
            raise CatalogError(f"ds.noncompact_roots: set is not closed under negation ({root})")
    identity = tuple(
        tuple(int(i == j) for j in range(dim)) for i in range(dim)
    )
    if identity not in ds.weyl_k:
        raise CatalogError("ds.wk_elements: the identity matrix is missing")
    compact_set = set(ds.compact_pos_roots) | {
        tuple(-c for c in r) for r in ds.compact_pos_roots
    }
    elements = set(ds.weyl_k)
    for w in ds.weyl_k:
        signed_perm_det(w)
        for alpha in compact_set:
            if apply_matrix(w, alpha) not in compact_set:
                raise CatalogError("ds.wk_elements: element does not permute the compact roots")
        for v in ds.weyl_k:
            prod = tuple(
                tuple(
                    sum(w[i][t] * v[t][j] for t in range(dim)) for j in range(dim)
                )
                for i in range(dim)
            )
            if prod not in elements:
                raise CatalogError("ds.wk_elements: set is not closed under composition")


def _identity_matrices(dim: int, sign_flips: bool):
    identity = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    if not sign_flips:
        return (identity,)
    out = []
    for signs in itertools.product((1, -1), repeat=dim):
        out.append(
            tuple(tuple(signs[i] * int(i == j) for j in range(dim)) for i in range(dim))
        )
    return tuple(out)


def _builtin_sl2r() -> GroupDatum:
    return GroupDatum(
        name="SL2R",
        k=CompactGroup((TORUS1,)),
        m=CompactGroup((CYCLIC2,)),
        branching_rule="parity",
        gram=((Fraction(1),),),
        two_rho_c=(0,),
        weyl_on_mhat="identity",
        equal_rank=True,
        ds=DiscreteSeriesDatum(
            compact_pos_roots=(),
            noncompact_roots=((2,), (-2,)),
            weyl_k=_identity_matrices(1, sign_flips=False),
        ),
    )


def _builtin_so31() -> GroupDatum:
    return GroupDatum(
        name="SO31",
        k=CompactGroup((SO3,)),
        m=CompactGroup((TORUS1,)),
        branching_rule="torus-restriction",
        gram=((Fraction(1),),),
        two_rho_c=(1,),
        weyl_on_mhat="negate-torus",
        equal_rank=False,
        ds=None,
    )


def _builtin_sp11() -> GroupDatum:
    return GroupDatum(
        name="Sp11",
        k=CompactGroup((SU2, SU2)),
        m=CompactGroup((SU2,)),
        branching_rule="clebsch-diagonal",
        gram=((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
        two_rho_c=(2, 2),
        weyl_on_mhat="identity",
        equal_rank=True,
        ds=DiscreteSeriesDatum(
            compact_pos_roots=((2, 0), (0, 2)),
            noncompact_roots=((1, 1), (1, -1), (-1, 1), (-1, -1)),
            weyl_k=_identity_matrices(2, sign_flips=True),
        ),
    )


_BUILTINS = {
    "SL2R": _builtin_sl2r,
    "SO31": _builtin_so31,
    "Sp11": _builtin_sp11,
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> GroupDatum:
    """The catalog datum for one of the built-in groups."""
    factory = _BUILTINS.get(name)
    if factory is None:
        raise CatalogError(
            f"unknown group {name!r}; built-ins are {', '.join(BUILTIN_NAMES)}"
        )
    return _validate(factory())


def serialize(datum: GroupDatum) -> dict:
    """JSON-ready document describing the datum (round-trips through load)."""
    doc = {
        "name": datum.name,
        "k_atoms": list(datum.k.atoms),
        "m_atoms": list(datum.m.atoms),
        "branching_rule": datum.branching_rule,
        "gram": [str(v) for row in datum.gram for v in row],
        "two_rho_c": list(datum.two_rho_c),
        "weyl_on_mhat": datum.weyl_on_mhat,
        "equal_rank": datum.equal_rank,
        "ds": None,
    }
    if datum.ds is not None:
        doc["ds"] = {
            "compact_roots": [list(r) for r in datum.ds.compact_pos_roots],
            "noncompact_roots": [list(r) for r in datum.ds.noncompact_roots],
            "wk_elements": [[list(row) for row in w] for w in datum.ds.weyl_k],
        }
    return doc


def _require(doc: dict, key: str):
    if key not in doc:
        raise CatalogError(f"{key}: missing required key")
    return doc[key]


def _int_vector(value, field: str) -> tuple[int, ...]:
    try:
        out = tuple(int(v) for v in value)
    except (TypeError, ValueError):
        raise CatalogError(f"{field}: expected a list of integers") from None
    for given, got in zip(value, out):
        if given != got:
            raise CatalogError(f"{field}: {given!r} is not an integer")
    return out


def _from_document(doc) -> GroupDatum:
    if not isinstance(doc, dict):
        raise CatalogError("document: expected a JSON object")
    name = _require(doc, "name")
    if not isinstance(name, str):
        raise CatalogError("name: expected a string")
    try:
        k = CompactGroup(tuple(_require(doc, "k_atoms")))
    except ValueError as exc:
        raise CatalogError(f"k_atoms: {exc}") from None
    try:
        m = CompactGroup(tuple(_require(doc, "m_atoms")))
    except ValueError as exc:
        raise CatalogError(f"m_atoms: {exc}") from None
    gram_flat = _require(doc, "gram")
    dim = k.lattice_dim
    if len(gram_flat) != dim * dim:
        raise CatalogError(f"gram: expected {dim * dim} row-major entries")
    try:
        values = [Fraction(str(v)) for v in gram_flat]
    except (ValueError, ZeroDivisionError):
        raise CatalogError("gram: entries must be rationals like '3' or '1/2'") from None
    gram = tuple(tuple(values[i * dim : (i + 1) * dim]) for i in range(dim))
    two_rho_c = _int_vector(_require(doc, "two_rho_c"), "two_rho_c")
    equal_rank = _require(doc, "equal_rank")
    if not isinstance(equal_rank, bool):
        raise CatalogError("equal_rank: expected a boolean")
    ds_doc = doc.get("ds")
    ds = None
    if ds_doc is not None:
        if not isinstance(ds_doc, dict):
            raise CatalogError("ds: expected an object or null")
        compact = tuple(
            _int_vector(r, "ds.compact_roots") for r in _require(ds_doc, "compact_roots")
        )
        noncompact = tuple(
            _int_vector(r, "ds.noncompact_roots")
            for r in _require(ds_doc, "noncompact_roots")
        )
        wk = tuple(
            tuple(_int_vector(row, "ds.wk_elements") for row in w)
            for w in _require(ds_doc, "wk_elements")
        )
        for w in wk:
            if len(w) != dim or any(len(row) != dim for row in w):
                raise CatalogError(f"ds.wk_elements: expected {dim}x{dim} matrices")
        ds = DiscreteSeriesDatum(compact, noncompact, wk)
    datum = GroupDatum(
        name=name,
        k=k,
        m=m,
        branching_rule=_require(doc, "branching_rule"),
        gram=gram,
        two_rho_c=two_rho_c,
        weyl_on_mhat=_require(doc, "weyl_on_mhat"),
        equal_rank=equal_rank,
        ds=ds,
    )
    return _validate(datum)


def load(source) -> GroupDatum:
    """Load a group definition from a JSON document.

    ``source`` may be a path, or the JSON text itself (detected by a
    leading brace).  All structural invariants are checked eagerly.
    """
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    elif isinstance(source, str):
        path = Path(source)
        if not path.exists():
            raise CatalogError(f"group file {source!r} does not exist")
        text = path.read_text()
    else:
        raise CatalogError("load expects a path or JSON text")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"parse error: {exc}") from None
    return _from_document(doc)
