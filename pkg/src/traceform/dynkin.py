"""Orbit indices N(W lambda), Dynkin indices of irreducibles, and N(G).

``N(X) = 1/2 sum_{x in X} <x, alpha^vee>^2`` for a long root alpha.  For a
Weyl orbit this has the closed form ``|W lambda| (lambda, lambda) / rank``
(long roots square to 2), which is the production path; enumeration is
kept as an independent check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, InvalidInput
from .lattice import GroupSpec, resolve_lattices
from .rootsys import RootSystem, Weight, _dominant, orbit_array, orbit_size

DEFAULT_DIM_CAP = 10**5
DEFAULT_BOUND = 4


def _long_coroot(rs: RootSystem, long_root: int | None) -> tuple[int, ...]:
    if long_root is None:
        long_root = rs.long_roots[0]
    if long_root not in rs.long_roots:
        raise InvalidInput(f"root index {long_root} is not a long root of {rs.name}")
    return tuple(int(x) for x in rs.coroot_coords(long_root))


def orbit_index_enum(rs: RootSystem, weight: Sequence[int], long_root: int | None = None, cap: int | None = None) -> int:
    """N(W lambda) by summing over the enumerated orbit.

    ``long_root`` indexes ``rs.roots``; any long root gives the same value.
    """
    orbit = orbit_array(rs, weight, cap)
    coroot = np.array(_long_coroot(rs, long_root), dtype=np.int64)
    total = _kernels.square_sum(orbit, coroot)
    assert total % 2 == 0
    return total // 2


def orbit_index_closed(rs: RootSystem, weight: Sequence[int]) -> int:
    w = _dominant(rs, weight)
    val = orbit_size(rs, w) * rs.weight_norm(w) / rs.rank
    if val.denominator != 1:
        raise AssertionError(f"non-integral orbit index {val} for {rs.name} {list(w)}")
    return int(val)


def _scaled_weight_gram(rs: RootSystem) -> tuple[np.ndarray, int]:
    den = lcm(*(x.denominator for row in rs.weight_gram for x in row))
    mat = np.array([[int(x * den) for x in row] for row in rs.weight_gram], dtype=np.int64)
    return mat, den


def irrep_dimension(rs: RootSystem, weight: Sequence[int]) -> int:
    """Weyl dimension formula, as a product over positive coroots."""
    w = _dominant(rs, weight)
    num, den = 1, 1
    for k in rs.positive_coroot_coords:
        num *= sum(ki * (c + 1) for ki, c in zip(k, w))
        den *= sum(k)
    assert num % den == 0
    return num // den


def dominant_weights(rs: RootSystem, weight: Sequence[int]) -> dict[Weight, int]:
    """Dominant weights of the irreducible module, mapped to their depth below lambda.

    Every dominant weight below lambda is reached from lambda through a chain
    of dominant weights differing by positive roots.
    """
    lam = _dominant(rs, weight)
    pos = rs.positive_roots_fund.tolist()
    heights = [sum(k) for k in rs.positive_root_coords]
    depth = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a, h in zip(pos, heights):
                nu = Weight(x - y for x, y in zip(mu, a))
                if nu.is_dominant and nu not in depth:
                    depth[nu] = depth[mu] + h
                    nxt.append(nu)
        frontier = nxt
    return depth


def weight_multiplicities(rs: RootSystem, weight: Sequence[int], cap: int | None = None) -> dict[Weight, int]:
    """Freudenthal recursion over dominant weights in order of increasing depth.

    The inner product is scaled to integers; each quotient is checked to be
    exact before it is accepted.
    """
    lam = _dominant(rs, weight)
    cap = DEFAULT_DIM_CAP if cap is None else cap
    dim = irrep_dimension(rs, lam)
    if dim > cap:
        raise CapExceeded(f"{rs.name} irreducible {list(lam)} has dimension {dim} > cap {cap}")

    depth = dominant_weights(rs, lam)
    order = sorted(depth, key=lambda mu: (depth[mu], mu[::-1]))
    g, _ = _scaled_weight_gram(rs)
    g = g.tolist()
    ell = rs.rank

    def ip(u, v):
        return sum(u[i] * g[i][j] * v[j] for i in range(ell) if u[i] for j in range(ell) if v[j])

    rho = [1] * ell
    lr = [a + b for a, b in zip(lam, rho)]
    top = ip(lr, lr)
    pos = rs.positive_roots_fund.tolist()
    mult: dict[Weight, int] = {lam: 1}
    conj_cache: dict[tuple[int, ...], Weight] = {}

    def m_of(v: tuple[int, ...]) -> int:
        d = conj_cache.get(v)
        if d is None:
            d = conj_cache[v] = rs.dominant_conjugate(v)
        return mult.get(d, 0) if d in depth else 0

    for mu in order[1:]:
        mr = [a + b for a, b in zip(mu, rho)]
        denom = top - ip(mr, mr)
        numer = 0
        for a in pos:
            k = 1
            while True:
                v = tuple(x + k * y for x, y in zip(mu, a))
                mv = m_of(v)
                if mv == 0:
                    break
                numer += mv * ip(v, a)
                k += 1
        numer *= 2
        if denom <= 0 or numer % denom:
            raise AssertionError(f"Freudenthal step not integral at {list(mu)}: {numer}/{denom}")
        mult[mu] = numer // denom
    return {mu: mult[mu] for mu in order if mult[mu]}


def irrep_index(rs: RootSystem, weight: Sequence[int], cap: int | None = None) -> int:
    """Dynkin index: sum over dominant weights of multiplicity times N(W mu)."""
    mults = weight_multiplicities(rs, weight, cap)
    return sum(m * orbit_index_closed(rs, mu) for mu, m in mults.items())


def tensor_index(dim1: int, index1: int, dim2: int, index2: int) -> int:
    """Dynkin index of a tensor product from the factors' dimensions and indices."""
    for x in (dim1, index1, dim2, index2):
        if x < 0:
            raise InvalidInput("dimensions and indices must be nonnegative")
    return dim1 * index2 + dim2 * index1


@dataclass(frozen=True)
class IrrepData:
    highest_weight: Weight
    dimension: int
    dominant_weight_multiplicities: dict[Weight, int] = field(hash=False)
    dynkin_index: int


def irrep_data(rs: RootSystem, weight: Sequence[int], cap: int | None = None) -> IrrepData:
    lam = _dominant(rs, weight)
    mults = weight_multiplicities(rs, lam, cap)
    index = sum(m * orbit_index_closed(rs, mu) for mu, m in mults.items())
    return IrrepData(lam, irrep_dimension(rs, lam), mults, index)


@dataclass(frozen=True)
class GroupIndexReport:
    value: int
    previous: int
    bound: int
    stabilized: bool


def _box_inputs(spec: GroupSpec):
    rs = spec.root_system
    lp = resolve_lattices(spec)
    fgram, den_f = _scaled_weight_gram(rs)
    quot = (rs.weyl_order // rs.parabolic_orders).astype(np.int64)
    mem, den_m = lp.membership
    return fgram, np.array(mem, dtype=np.int64), den_m, quot, den_f * rs.rank


def _fits_int64(spec: GroupSpec, bound: int) -> bool:
    rs = spec.root_system
    fgram, _ = _scaled_weight_gram(rs)
    qmax = bound * bound * int(np.abs(fgram).sum())
    return rs.weyl_order * qmax < _kernels.INT64_SAFE


def box_gcd_reference(spec: GroupSpec, bound: int) -> tuple[int, int]:
    """Plain-Python gcd over the box; slow, used for overflow cases and as a check."""
    rs = spec.root_system
    lp = resolve_lattices(spec)
    g_prev = g_cur = 0
    for pt in itertools.product(range(bound + 1), repeat=rs.rank):
        if not lp.contains(pt):
            continue
        val = orbit_index_closed(rs, pt)
        g_cur = gcd(g_cur, val)
        if max(pt) < bound:
            g_prev = gcd(g_prev, val)
    return g_prev, g_cur


def group_index(spec: GroupSpec, bound: int = DEFAULT_BOUND, backend: str | None = None) -> GroupIndexReport:
    """N(G) as the gcd of N(W lambda) over characters with coordinates <= bound.

    ``stabilized`` records whether the gcd over coordinates <= bound - 1
    already agreed; there is no proven stopping rule, so callers decide how
    to treat an unstabilized value.
    """
    if isinstance(bound, bool) or int(bound) != bound or bound < 1:
        raise InvalidInput(f"search bound must be a positive integer, got {bound!r}")
    bound = int(bound)
    if _fits_int64(spec, bound):
        fgram, mem, den, quot, divisor = _box_inputs(spec)
        prev, cur, bad = _kernels.box_gcd(bound, fgram, mem, den, quot, divisor, backend=backend)
        if bad:
            raise AssertionError(f"{bad} non-integral orbit indices for {spec.label}")
    else:
        prev, cur = box_gcd_reference(spec, bound)
    return GroupIndexReport(value=cur, previous=prev, bound=bound, stabilized=prev == cur and cur > 0)


def character_box(spec: GroupSpec, bound: int) -> np.ndarray:
    """All dominant characters with coordinates <= bound (rows, int64)."""
    rs = spec.root_system
    pts = np.indices((bound + 1,) * rs.rank, dtype=np.int64).reshape(rs.rank, -1).T
    mem, den = resolve_lattices(spec).membership
    ok = ((pts @ np.array(mem, dtype=np.int64).T) % den == 0).all(axis=1)
    return np.ascontiguousarray(pts[ok])


def orbit_indices_batch(spec: GroupSpec, points: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Closed-form N(W lambda) for many dominant weights at once."""
    fgram, _, _, quot, divisor = _box_inputs(spec)
    pts = np.ascontiguousarray(points, dtype=np.int64)
    if len(pts) and (pts < 0).any():
        raise InvalidInput("orbit_indices_batch needs dominant weights")
    bound = int(pts.max()) if len(pts) else 0
    if not _fits_int64(spec, max(bound, 1)):
        return np.array([orbit_index_closed(spec.root_system, p) for p in pts.tolist()], dtype=object)
    vals, rems = _kernels.closed_values(pts, fgram, quot, divisor, backend=backend)
    if np.any(rems):
        raise AssertionError("non-integral orbit index in batch")
    return vals
