"""Simple root systems with exact coordinates and Weyl-group combinatorics.

Ambient models follow the usual Bourbaki tables.  The inner product is the
standard dot product rescaled so that long roots have squared length 2.
Weights are integer vectors in the fundamental-weight basis, so the pairing
``<lambda, alpha_i^vee>`` is just coordinate ``i``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidInput, OrbitTooLarge

Vector = tuple[Fraction, ...]

DEFAULT_ORBIT_CAP = 10**6
MAX_RANK = 32

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


class Weight(tuple):
    """Integer coordinates ``c_i`` of ``sum c_i omega_i``."""

    def __new__(cls, coords: Iterable[int]):
        coords = tuple(coords)
        for c in coords:
            if isinstance(c, bool) or int(c) != c:
                raise InvalidInput(f"weight coordinates must be integers, got {coords!r}")
        return super().__new__(cls, (int(c) for c in coords))

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self)

    def __repr__(self) -> str:
        return f"Weight({list(self)})"


def orbit_cap() -> int:
    raw = os.environ.get("TRACEFORM_ORBIT_CAP")
    if raw is None:
        return DEFAULT_ORBIT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidInput(f"TRACEFORM_ORBIT_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InvalidInput("TRACEFORM_ORBIT_CAP must be positive")
    return cap


def _e(n: int, *entries: tuple[int, Fraction | int]) -> Vector:
    v = [Fraction(0)] * n
    for i, x in entries:
        v[i] = Fraction(x)
    return tuple(v)


def _ambient_simple_roots(t: str, r: int) -> tuple[list[Vector], Fraction]:
    """Bourbaki simple roots and the scale that makes long roots square to 2."""
    if t == "A":
        n = r + 1
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(r)], Fraction(1)
    if t in "BCD":
        n = r
        simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(r - 1)]
        if t == "B":
            simple.append(_e(n, (r - 1, 1)))
            return simple, Fraction(1)
        if t == "C":
            simple.append(_e(n, (r - 1, 2)))
            return simple, Fraction(1, 2)
        simple.append(_e(n, (r - 2, 1), (r - 1, 1)))
        return simple, Fraction(1)
    if t == "E":
        h = Fraction(1, 2)
        e8 = [
            tuple([h] + [-h] * 6 + [h]),
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return e8[:r], Fraction(1)
    if t == "F":
        h = Fraction(1, 2)
        return [
            _e(4, (1, 1), (2, -1)),
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1)),
            (h, -h, -h, -h),
        ], Fraction(1)
    if t == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))], Fraction(1, 3)
    raise InvalidInput(f"unknown type letter {t!r}")


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse over Q."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InvalidInput("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def weyl_order_of_cartan(cartan: Sequence[Sequence[int]]) -> int:
    """Order of the Weyl group of a (possibly reducible) Cartan matrix.

    Each connected component of the Dynkin diagram is identified by its
    shape; the empty matrix gives the trivial group.
    """
    n = len(cartan)
    seen: set[int] = set()
    order = 1
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0 and i != j:
                    seen.add(j)
                    stack.append(j)
        order *= _component_weyl_order(cartan, sorted(comp))
    return order


def _component_weyl_order(cartan, comp: list[int]) -> int:
    k = len(comp)
    if k == 1:
        return 2
    bonds = {(i, j): cartan[i][j] * cartan[j][i] for i in comp for j in comp if i < j and cartan[i][j]}
    degree = {i: sum(1 for (a, b) in bonds if i in (a, b)) for i in comp}
    mult = max(bonds.values())
    if mult == 3:
        return 12
    if mult == 2:
        (a, b), = [e for e, m in bonds.items() if m == 2]
        if k == 4 and degree[a] == 2 and degree[b] == 2:
            return 1152
        return 2**k * factorial(k)
    branch = [i for i in comp if degree[i] == 3]
    if not branch:
        return factorial(k + 1)
    centre = branch[0]
    arms = []
    for nb in (j for j in comp if (min(centre, j), max(centre, j)) in bonds):
        length, prev, cur = 1, centre, nb
        while True:
            nxt = [j for j in comp if j != prev and (min(cur, j), max(cur, j)) in bonds]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return 2 ** (k - 1) * factorial(k)
    return {(1, 2, 2): 51840, (1, 2, 3): 2903040, (1, 2, 4): 696729600}[tuple(arms)]


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_letter: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    roots: tuple[Vector, ...]
    long_roots: tuple[int, ...]
    short_roots: tuple[int, ...]
    inner_product: tuple[tuple[Fraction, ...], ...]
    weyl_vector: Vector
    coroot_marks: tuple[int, ...]
    weyl_order: int
    simple_roots: tuple[Vector, ...] = field(repr=False)
    root_coords: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return _dot(u, v) * self.inner_product[0][0]

    @property
    def num_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def positive_roots(self) -> tuple[Vector, ...]:
        return self.roots[: self.num_positive]

    @property
    def coxeter_number(self) -> int:
        return len(self.roots) // self.rank

    @cached_property
    def simple_sq_lengths(self) -> tuple[Fraction, ...]:
        return tuple(self.inner(a, a) for a in self.simple_roots)

    @cached_property
    def is_simply_laced(self) -> bool:
        return not self.short_roots

    @cached_property
    def length_ratio(self) -> int:
        """Square-length ratio of long to short roots (1 if simply laced)."""
        return int(max(self.simple_sq_lengths) / min(self.simple_sq_lengths))

    @cached_property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        """Ambient coordinates of omega_1..omega_l."""
        inv_t = _mat_inverse([[Fraction(self.cartan_matrix[j][i]) for j in range(self.rank)] for i in range(self.rank)])
        dim = len(self.simple_roots[0])
        return tuple(
            tuple(sum((inv_t[i][k] * self.simple_roots[k][d] for k in range(self.rank)), Fraction(0)) for d in range(dim))
            for i in range(self.rank)
        )

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix ``(omega_i, omega_j)``."""
        w = self.fundamental_weights
        return tuple(tuple(self.inner(a, b) for b in w) for a in w)

    @cached_property
    def coroot_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix ``(alpha_i^vee, alpha_j^vee)`` with coroot = 2 alpha / (alpha, alpha)."""
        sq = self.simple_sq_lengths
        s = self.simple_roots
        return tuple(
            tuple(4 * self.inner(s[i], s[j]) / (sq[i] * sq[j]) for j in range(self.rank)) for i in range(self.rank)
        )

    @cached_property
    def positive_root_coords(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in the simple-root basis."""
        return self.root_coords[: self.num_positive]

    def coroot_coords(self, root_index: int) -> tuple[Fraction, ...]:
        """Coroot of ``roots[root_index]`` in the simple-coroot basis."""
        a = self.roots[root_index]
        sq = self.inner(a, a)
        return tuple(Fraction(b) * l / sq for b, l in zip(self.root_coords[root_index], self.simple_sq_lengths))

    @cached_property
    def positive_coroot_coords(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i in range(self.num_positive):
            k = self.coroot_coords(i)
            assert all(x.denominator == 1 for x in k)
            out.append(tuple(int(x) for x in k))
        return tuple(out)

    @cached_property
    def positive_roots_fund(self) -> np.ndarray:
        """Positive roots in fundamental-weight coordinates (int64, one per row)."""
        a = np.array(self.cartan_matrix, dtype=np.int64)
        return np.array(self.positive_root_coords, dtype=np.int64) @ a.T

    @cached_property
    def simple_roots_fund(self) -> np.ndarray:
        """Row ``j`` is alpha_j in fundamental-weight coordinates."""
        return np.array(self.cartan_matrix, dtype=np.int64).T.copy()

    @cached_property
    def highest_root_coords(self) -> tuple[int, ...]:
        """Highest root in simple-root coordinates."""
        return max(self.positive_root_coords, key=sum)

    @cached_property
    def highest_root_weight(self) -> "Weight":
        """Highest root in fundamental-weight coordinates (the adjoint highest weight)."""
        k = self.highest_root_coords
        return Weight(sum(self.cartan_matrix[i][j] * k[j] for j in range(self.rank)) for i in range(self.rank))

    def pair(self, weight: Sequence[int], coroot: Sequence[int | Fraction]):
        """``<lambda, beta^vee>`` for ``beta^vee`` in simple-coroot coordinates."""
        return sum(c * k for c, k in zip(weight, coroot))

    def weight_norm(self, weight: Sequence[int]) -> Fraction:
        g = self.weight_gram
        return sum(
            (weight[i] * weight[j] * g[i][j] for i in range(self.rank) for j in range(self.rank) if weight[i] and weight[j]),
            Fraction(0),
        )

    def to_ambient(self, weight: Sequence[int]) -> Vector:
        dim = len(self.simple_roots[0])
        return tuple(sum((c * w[d] for c, w in zip(weight, self.fundamental_weights)), Fraction(0)) for d in range(dim))

    def from_ambient(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(2 * self.inner(v, a) / l for a, l in zip(self.simple_roots, self.simple_sq_lengths))

    def reflect(self, weight: Sequence[int], i: int) -> Weight:
        """Simple reflection ``s_i`` in fundamental-weight coordinates."""
        ci = weight[i]
        return Weight(c - ci * self.cartan_matrix[j][i] for j, c in enumerate(weight))

    def dominant_conjugate(self, weight: Sequence[int]) -> Weight:
        w = list(weight)
        a = self.cartan_matrix
        while True:
            i = next((k for k, c in enumerate(w) if c < 0), None)
            if i is None:
                return Weight(w)
            ci = w[i]
            for j in range(self.rank):
                w[j] -= ci * a[j][i]

    def parabolic_order(self, subset: Iterable[int]) -> int:
        idx = sorted(set(subset))
        sub = [[self.cartan_matrix[i][j] for j in idx] for i in idx]
        return weyl_order_of_cartan(sub)

    @cached_property
    def parabolic_orders(self) -> np.ndarray:
        """``|W_J|`` indexed by the bitmask of J (bit i set <=> i in J)."""
        out = np.empty(1 << self.rank, dtype=np.int64)
        for mask in range(1 << self.rank):
            out[mask] = self.parabolic_order(i for i in range(self.rank) if mask >> i & 1)
        return out


def _closure(simple: list[Vector], scale: Fraction, cartan: list[list[int]]) -> list[tuple[Vector, tuple[int, ...]]]:
    r = len(simple)
    start = {tuple(int(i == j) for j in range(r)) for i in range(r)}
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for k in frontier:
            for i in range(r):
                # <beta, alpha_i^vee> = sum_j k_j A[i][j]
                p = sum(k[j] * cartan[i][j] for j in range(r))
                if p == 0:
                    continue
                new = tuple(k[j] - (p if j == i else 0) for j in range(r))
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    dim = len(simple[0])
    out = []
    for k in seen:
        amb = tuple(sum((k[i] * simple[i][d] for i in range(r)), Fraction(0)) for d in range(dim))
        out.append((amb, k))
    return out


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Construct the simple root system of the given type and rank."""
    t = str(type_letter).upper()
    if t not in _VALID_RANKS or isinstance(rank, bool) or not isinstance(rank, int) or not _VALID_RANKS[t](rank):
        raise InvalidInput(f"invalid simple type {type_letter}{rank}")
    if rank > MAX_RANK:
        raise InvalidInput(f"rank {rank} exceeds the supported maximum {MAX_RANK}")
    simple, scale = _ambient_simple_roots(t, rank)
    sq = [_dot(a, a) * scale for a in simple]
    cartan = [[int(2 * _dot(simple[j], simple[i]) * scale / sq[i]) for j in range(rank)] for i in range(rank)]

    pos = _closure(simple, scale, cartan)
    pos = [p for p in pos if all(c >= 0 for c in p[1])]
    pos.sort(key=lambda p: (sum(p[1]), p[1]))
    neg = [(tuple(-x for x in amb), tuple(-c for c in k)) for amb, k in pos]
    allr = pos + neg
    roots = tuple(a for a, _ in allr)
    coords = tuple(k for _, k in allr)
    long_len = max(sq)
    long_idx = tuple(i for i, a in enumerate(roots) if _dot(a, a) * scale == long_len)
    short_idx = tuple(i for i, a in enumerate(roots) if _dot(a, a) * scale != long_len)

    dim = len(simple[0])
    half = Fraction(1, 2)
    rho = tuple(half * sum((a[d] for a, _ in pos), Fraction(0)) for d in range(dim))
    theta = max((k for _, k in pos), key=sum)
    marks = tuple(int(theta[i] * sq[i] / long_len) for i in range(rank))
    ip = tuple(tuple(scale if i == j else Fraction(0) for j in range(dim)) for i in range(dim))

    return RootSystem(
        type_letter=t,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        roots=roots,
        long_roots=long_idx,
        short_roots=short_idx,
        inner_product=ip,
        weyl_vector=rho,
        coroot_marks=marks,
        weyl_order=weyl_order_of_cartan(cartan),
        simple_roots=tuple(simple),
        root_coords=coords,
    )


def dual_coxeter_number(rs: RootSystem) -> int:
    return 1 + sum(rs.coroot_marks)


def _dominant(rs: RootSystem, weight: Sequence[int]) -> Weight:
    w = Weight(weight)
    if len(w) != rs.rank:
        raise InvalidInput(f"{rs.name} weights have {rs.rank} coordinates, got {len(w)}")
    if not w.is_dominant:
        raise InvalidInput(f"weight {list(w)} is not dominant")
    return w


def orbit_size(rs: RootSystem, weight: Sequence[int]) -> int:
    """``|W lambda| = |W| / |W_J|`` with J the zero coordinates of lambda."""
    w = _dominant(rs, weight)
    return rs.weyl_order // rs.parabolic_order(i for i, c in enumerate(w) if c == 0)


def orbit_array(rs: RootSystem, weight: Sequence[int], cap: int | None = None) -> np.ndarray:
    """All of ``W lambda`` as an int64 array, one weight per row.

    Breadth-first descent from the dominant weight: ``s_i`` is applied only
    where coordinate ``i`` is positive.  Each step raises the length of the
    minimal coset representative by one, so duplicates can only occur
    within a level.
    """
    w = _dominant(rs, weight)
    cap = orbit_cap() if cap is None else cap
    size = orbit_size(rs, w)
    if size > cap:
        raise OrbitTooLarge(
            f"orbit of {list(w)} in {rs.name} has {size} elements (cap {cap}); use orbit_index_closed"
        )
    level = np.array([w], dtype=np.int64)
    levels = [level]
    cols = rs.simple_roots_fund
    while len(level):
        level = _kernels.unique_rows(_kernels.expand_level(level, cols))
        if len(level):
            levels.append(level)
    out = np.concatenate(levels)
    assert len(out) == size, (len(out), size)
    return out


def orbit_enumerate(rs: RootSystem, weight: Sequence[int], cap: int | None = None) -> list[Weight]:
    return [Weight(row) for row in orbit_array(rs, weight, cap).tolist()]


def weight_from_string(text: str) -> Weight:
    """Parse ``[1,0,2]``, ``1,0,2`` or ``1 0 2``."""
    s = text.strip().strip("[]()").replace(",", " ")
    try:
        return Weight(int(tok) for tok in s.split())
    except ValueError as exc:
        raise InvalidInput(f"malformed weight coordinates {text!r}") from exc


def all_simple_types(max_rank: int = 8) -> list[tuple[str, int]]:
    out = []
    for t, ok in _VALID_RANKS.items():
        for r in range(1, max_rank + 1):
            if ok(r):
                out.append((t, r))
    return out

