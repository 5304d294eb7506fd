"""Points of the distinguished affine chart around the worst point of the
special fiber, over small coefficient rings, and checkers for the
chart-level moduli conditions.

A chart point is an n x n matrix X over a coefficient ring R (odd n); it
represents the rank-n submodule spanned by the columns of [X; I_n] in the
chart ordering of the standard lattice frame.  X is blocked as

    X = [ X1  X2 ]     X1 of size (n-1) x (n-1), X4 scalar.
        [ X3  X4 ]

The matrix-equation checkers (naive relations, wedge, trace) apply on the
X2 = X4 = 0 locus where the conditions have been translated into equations;
elsewhere they report "out-of-chart" after checking the one fact that holds
on the whole chart, X4^2 = 0.  The membership checkers (spin, refined,
degree-l analogues) and the characteristic-polynomial checker work on the
whole chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import SchemaError
from .exterior import (E_BASIS, WedgeVector, chart_frame, frame_position_map,
                       reindex_wedge_terms, standard_e_frame, wedge_columns_masks)
from .fields import PrimeField, Rationals, field_from_key
from .indexsets import IndexSet
from .lattices import (annihilators, intersect_with_standard_lattice,
                       membership_over_R, reduce_mod_pi, spanning_set)
from .rings import ring_from_json, ring_to_json

DEFAULT_PRECISION = 24

PASS = "pass"
FAIL = "fail"
OUT_OF_CHART = "out-of-chart"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: str = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class ChartPoint:
    n: int
    ring: object
    rows: tuple
    signature: tuple

    def __post_init__(self):
        if self.n % 2 == 0 or self.n < 3:
            raise ValueError("chart points require odd n >= 3")
        r, s = self.signature
        if r + s != self.n or r < 0 or s < 0:
            raise ValueError("signature must be a partition of n")
        if len(self.rows) != self.n or any(len(row) != self.n for row in self.rows):
            raise ValueError("X must be n x n")

    @staticmethod
    def from_blocks(n, ring, x1, x3, x2=None, x4=None, signature=None):
        if signature is None:
            signature = (n - 1, 1)
        zero = ring.zero
        if x2 is None:
            x2 = [zero] * (n - 1)
        if x4 is None:
            x4 = zero
        rows = []
        for i in range(n - 1):
            rows.append(tuple(list(x1[i]) + [x2[i]]))
        rows.append(tuple(list(x3) + [x4]))
        return ChartPoint(n, ring, tuple(rows), tuple(signature))

    def x1(self):
        return [list(row[: self.n - 1]) for row in self.rows[: self.n - 1]]

    def x2(self):
        return [row[self.n - 1] for row in self.rows[: self.n - 1]]

    def x3(self):
        return list(self.rows[self.n - 1][: self.n - 1])

    def x4(self):
        return self.rows[self.n - 1][self.n - 1]

    def on_translated_locus(self) -> bool:
        ring = self.ring
        return (all(ring.is_zero(c) for c in self.x2())
                and ring.is_zero(self.x4()))


def chart_point_embed(pt: ChartPoint) -> list:
    """Columns of [X; I_n] as sparse vectors over the chart frame positions:
    column j carries X[., j] on rows 1..n and a 1 on row n + j."""
    cols = []
    for j in range(pt.n):
        col = {}
        for i in range(pt.n):
            c = pt.rows[i][j]
            if not pt.ring.is_zero(c):
                col[i + 1] = c
        col[pt.n + j + 1] = pt.ring.one
        cols.append(col)
    return cols


@lru_cache(maxsize=None)
def _chart_to_e_posmap(n: int, field_key: tuple) -> tuple:
    field = field_from_key(field_key)
    return tuple(frame_position_map(chart_frame(field, n), standard_e_frame(field, n)))


def wedge_vector(pt: ChartPoint) -> WedgeVector:
    """Wedge of the point's columns from left to right, in e-basis
    coordinates over the point's coefficient ring."""
    cols = chart_point_embed(pt)
    masks = wedge_columns_masks(cols, pt.ring)
    terms = {IndexSet(pt.n, m): c for m, c in masks.items()}
    posmap = list(_chart_to_e_posmap(pt.n, pt.ring.field.key()))
    return WedgeVector(E_BASIS, pt.n, reindex_wedge_terms(terms, posmap, pt.ring, pt.n))


def partial_wedge_vectors(pt: ChartPoint, l: int):
    """e-basis wedges of each l-subset of the point's columns, in column
    order, as (column tuple, WedgeVector) pairs."""
    cols = chart_point_embed(pt)
    posmap = list(_chart_to_e_posmap(pt.n, pt.ring.field.key()))
    for combo in combinations(range(pt.n), l):
        masks = wedge_columns_masks([cols[j] for j in combo], pt.ring)
        terms = {IndexSet(pt.n, m): c for m, c in masks.items()}
        yield combo, WedgeVector(E_BASIS, pt.n,
                                 reindex_wedge_terms(terms, posmap, pt.ring, pt.n))


# ---------------------------------------------------------------------------
# Matrix helpers over a coefficient ring


def block_reflection(ring, size: int):
    """The antidiagonal reflection with +1 in the upper right half and -1 in
    the lower left half (size = 2m)."""
    m = size // 2
    rows = []
    for i in range(size):
        row = [ring.zero] * size
        row[size - 1 - i] = ring.one if i < m else ring.neg(ring.one)
        rows.append(row)
    return rows


def mat_mul(ring, a, b):
    rows, mid, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring.zero
            for t in range(mid):
                if ring.is_zero(a[i][t]) or ring.is_zero(b[t][j]):
                    continue
                acc = ring.add(acc, ring.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_add(ring, a, b):
    return [[ring.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_neg(ring, a):
    return [[ring.neg(x) for x in row] for row in a]


def mat_is_zero(ring, a) -> bool:
    return all(ring.is_zero(x) for row in a for x in row)


def _first_nonzero(ring, a):
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if not ring.is_zero(x):
                return i, j, x
    return None


def _det(ring, m, rows, cols):
    """Determinant of the submatrix on the given rows and columns, by
    expansion along the first row (sparse entries prune the recursion)."""
    if not rows:
        return ring.one
    i = rows[0]
    rest = rows[1:]
    acc = ring.zero
    for pos, j in enumerate(cols):
        c = m[i][j]
        if ring.is_zero(c):
            continue
        sub = _det(ring, m, rest, cols[:pos] + cols[pos + 1:])
        term = ring.mul(c, sub)
        if pos % 2:
            term = ring.neg(term)
        acc = ring.add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# Condition checkers


def check_naive_relations(pt: ChartPoint) -> Verdict:
    """The translated module-theoretic equations on the X2 = X4 = 0 locus:
    -J X3^t X3 = X1 + J X1^t J, X1^2 = 0, X3 X1 = 0.  Off the locus only
    X4^2 = 0 is checked (it holds on the whole chart)."""
    ring = pt.ring
    if not pt.on_translated_locus():
        x4 = pt.x4()
        if not ring.is_zero(ring.mul(x4, x4)):
            return Verdict(FAIL, "X4^2 != 0")
        return Verdict(OUT_OF_CHART, "X2, X4 not both zero")
    n = pt.n
    x1 = pt.x1()
    x3 = [pt.x3()]
    j_mat = block_reflection(ring, n - 1)
    lhs = mat_neg(ring, mat_mul(ring, j_mat, mat_mul(ring, mat_transpose(x3), x3)))
    rhs = mat_add(ring, x1, mat_mul(ring, j_mat, mat_mul(ring, mat_transpose(x1), j_mat)))
    diff = mat_add(ring, lhs, mat_neg(ring, rhs))
    bad = _first_nonzero(ring, diff)
    if bad:
        return Verdict(FAIL, f"symmetry relation fails at entry ({bad[0] + 1}, {bad[1] + 1})")
    sq = mat_mul(ring, x1, x1)
    bad = _first_nonzero(ring, sq)
    if bad:
        return Verdict(FAIL, f"X1^2 nonzero at entry ({bad[0] + 1}, {bad[1] + 1})")
    prod = mat_mul(ring, x3, x1)
    bad = _first_nonzero(ring, prod)
    if bad:
        return Verdict(FAIL, f"X3 X1 nonzero at column {bad[1] + 1}")
    return Verdict(PASS)


def check_kottwitz(pt: ChartPoint) -> Verdict:
    """charpoly(X) = T^n over R: every signed sum of principal minors of a
    fixed size vanishes."""
    ring = pt.ring
    n = pt.n
    m = [list(row) for row in pt.rows]
    for size in range(1, n + 1):
        total = ring.zero
        for combo in combinations(range(n), size):
            total = ring.add(total, _det(ring, m, combo, combo))
        if not ring.is_zero(total):
            return Verdict(FAIL, f"charpoly coefficient at T^{n - size} is nonzero")
    return Verdict(PASS)


def check_wedge(pt: ChartPoint) -> Verdict:
    """All 2 x 2 minors of the stacked matrix [X1; X3] vanish (signature
    (n-1, 1) translation on the X2 = X4 = 0 locus)."""
    ring = pt.ring
    if not pt.on_translated_locus():
        return Verdict(OUT_OF_CHART, "X2, X4 not both zero")
    stacked = pt.x1() + [pt.x3()]
    rows, cols = pt.n, pt.n - 1
    for a, b in combinations(range(rows), 2):
        for c, d in combinations(range(cols), 2):
            minor = ring.sub(ring.mul(stacked[a][c], stacked[b][d]),
                             ring.mul(stacked[a][d], stacked[b][c]))
            if not ring.is_zero(minor):
                return Verdict(FAIL, f"2x2 minor at rows ({a + 1}, {b + 1}), "
                                     f"columns ({c + 1}, {d + 1})")
    return Verdict(PASS)


def check_trace(pt: ChartPoint) -> Verdict:
    ring = pt.ring
    if not pt.on_translated_locus():
        return Verdict(OUT_OF_CHART, "X2, X4 not both zero")
    x1 = pt.x1()
    total = ring.zero
    for i in range(pt.n - 1):
        total = ring.add(total, x1[i][i])
    if not ring.is_zero(total):
        return Verdict(FAIL, "tr X1 != 0")
    return Verdict(PASS)


@lru_cache(maxsize=None)
def spin_annihilators(n: int, field_key: tuple, eps: int,
                      precision: int = DEFAULT_PRECISION):
    field = field_from_key(field_key)
    gens = spanning_set("spin", n, field, eps=eps)
    return annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, precision)))


@lru_cache(maxsize=None)
def refined_annihilators(n: int, field_key: tuple, r: int, s: int,
                         precision: int = DEFAULT_PRECISION):
    field = field_from_key(field_key)
    eps = -1 if s % 2 else 1
    gens = spanning_set("refined", n, field, eps=eps, r=r, s=s)
    return annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, precision)))


@lru_cache(maxsize=None)
def kl_annihilators(n: int, field_key: tuple, l: int, r: int, s: int,
                    precision: int = DEFAULT_PRECISION):
    field = field_from_key(field_key)
    gens = spanning_set("kl", n, field, l=l, r=r, s=s)
    return annihilators(reduce_mod_pi(intersect_with_standard_lattice(gens, precision)))


def _membership_verdict(result) -> Verdict:
    if result.ok:
        return Verdict(PASS)
    return Verdict(FAIL, result.witness)


def check_spin(pt: ChartPoint, eps: int,
               precision: int = DEFAULT_PRECISION) -> Verdict:
    """The column wedge lies in the mod-pi image of the eps half-spin
    lattice."""
    ann = spin_annihilators(pt.n, pt.ring.field.key(), eps, precision)
    return _membership_verdict(membership_over_R(wedge_vector(pt), ann, pt.ring))


def check_refined(pt: ChartPoint, r: int = None, s: int = None,
                  precision: int = DEFAULT_PRECISION) -> Verdict:
    """The column wedge lies in the mod-pi image of the signature-refined
    half-spin lattice."""
    if r is None or s is None:
        r, s = pt.signature
    ann = refined_annihilators(pt.n, pt.ring.field.key(), r, s, precision)
    return _membership_verdict(membership_over_R(wedge_vector(pt), ann, pt.ring))


def check_kl(pt: ChartPoint, l: int, r: int = None, s: int = None,
             precision: int = DEFAULT_PRECISION) -> Verdict:
    """Every l-fold wedge of the point's columns lies in the mod-pi image of
    the degree-l eigenspace-bounded lattice."""
    if r is None or s is None:
        r, s = pt.signature
    if not 1 <= l <= pt.n:
        raise ValueError(f"wedge degree {l} outside 1..{pt.n}")
    ann = kl_annihilators(pt.n, pt.ring.field.key(), l, r, s, precision)
    for combo, w in partial_wedge_vectors(pt, l):
        result = membership_over_R(w, ann, pt.ring)
        if not result.ok:
            cols = tuple(j + 1 for j in combo)
            return Verdict(FAIL, f"columns {cols}: {result.witness}")
    return Verdict(PASS)


@dataclass(frozen=True)
class ConditionReport:
    conditions: dict

    def to_json(self):
        return {name: v.to_json() for name, v in self.conditions.items()}

    def verdict_vector(self) -> dict:
        return {name: v.status for name, v in self.conditions.items()}


def full_report(pt: ChartPoint, precision: int = DEFAULT_PRECISION) -> ConditionReport:
    r, s = pt.signature
    conditions = {
        "naive": check_naive_relations(pt),
        "kottwitz": check_kottwitz(pt),
        "wedge": check_wedge(pt),
        "trace": check_trace(pt),
        "spin(+1)": check_spin(pt, 1, precision),
        "spin(-1)": check_spin(pt, -1, precision),
        "refined": check_refined(pt, r, s, precision),
        "kn": check_kl(pt, pt.n, r, s, precision),
    }
    return ConditionReport(conditions)


# ---------------------------------------------------------------------------
# JSON schema


def chart_point_to_json(pt: ChartPoint) -> dict:
    field = pt.ring.field
    p = field.p if isinstance(field, PrimeField) else "rationals"
    return {
        "n": pt.n,
        "p": p,
        "signature": list(pt.signature),
        "ring": ring_to_json(pt.ring),
        "X": [[pt.ring.element_to_json(c) for c in row] for row in pt.rows],
    }


def chart_point_from_json(obj) -> ChartPoint:
    if not isinstance(obj, dict):
        raise SchemaError("chart point must be a JSON object")
    for key in ("n", "ring", "X"):
        if key not in obj:
            raise SchemaError(f"missing field '{key}'")
    n = obj["n"]
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise SchemaError("field 'n' must be an odd integer >= 3")
    p = obj.get("p", 13)
    if p == "rationals":
        field = Rationals()
    elif isinstance(p, int):
        try:
            field = PrimeField(p)
        except ValueError as exc:
            raise SchemaError(f"field 'p': {exc}") from exc
    else:
        raise SchemaError("field 'p' must be an odd prime or 'rationals'")
    try:
        ring = ring_from_json(field, obj["ring"])
    except SchemaError as exc:
        raise SchemaError(f"field 'ring': {exc}") from exc
    sig = obj.get("signature", [n - 1, 1])
    if (not isinstance(sig, list) or len(sig) != 2
            or not all(isinstance(t, int) for t in sig)):
        raise SchemaError("field 'signature' must be a pair of integers")
    x = obj["X"]
    if not isinstance(x, list) or len(x) != n or any(
            not isinstance(row, list) or len(row) != n for row in x):
        raise SchemaError("field 'X' must be an n x n array of entries")
    rows = []
    for i, row in enumerate(x):
        out = []
        for j, entry in enumerate(row):
            try:
                out.append(ring.element_from_json(entry))
            except (SchemaError, ValueError) as exc:
                raise SchemaError(f"field 'X[{i}][{j}]': {exc}") from exc
        rows.append(tuple(out))
    return ChartPoint(n, ring, tuple(rows), tuple(sig))
