"""Integer hot loops: orbit descent and the lattice-box gcd sweep.

Each kernel has a numba ``@njit`` version and a vectorized numpy version
with identical results.  numba is used when importable unless
``TRACEFORM_DISABLE_NUMBA`` is set to a truthy value.  All arithmetic is
int64; callers check overflow bounds before dispatching here.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

_DISABLED = os.environ.get("TRACEFORM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
BACKEND = "numba" if HAS_NUMBA and not _DISABLED else "numpy"

INT64_SAFE = 2**62


# ---------------------------------------------------------------- numpy path


def expand_level_numpy(level: np.ndarray, cols: np.ndarray) -> np.ndarray:
    parts = []
    for i in range(level.shape[1]):
        sel = level[level[:, i] > 0]
        if len(sel):
            parts.append(sel - sel[:, i : i + 1] * cols[i])
    if not parts:
        return np.empty((0, level.shape[1]), dtype=np.int64)
    return np.concatenate(parts)


def square_sum_numpy(orbit: np.ndarray, coroot: np.ndarray) -> int:
    p = orbit @ coroot
    return int(np.dot(p, p))


def _box_block(bound: int, dims: int) -> np.ndarray:
    if dims == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((bound + 1,) * dims, dtype=np.int64).reshape(dims, -1).T
    return np.ascontiguousarray(grids[:, ::-1])


def box_gcd_numpy(bound, fgram, mem, den, quot, divisor):
    """gcd of closed-form orbit indices over T* points in the box.

    Returns ``(gcd over coords <= bound-1, gcd over coords <= bound,
    number of non-integral values)``.
    """
    ell = fgram.shape[0]
    inner_dims = min(ell, max(1, int(np.log(2e5) / np.log(bound + 1))))
    outer_dims = ell - inner_dims
    inner = _box_block(bound, inner_dims)
    fi = fgram[outer_dims:, outer_dims:]
    fo = fgram[:outer_dims, :outer_dims]
    cross = fgram[:outer_dims, outer_dims:]
    q_inner = np.einsum("ij,jk,ik->i", inner, fi, inner)
    res_inner = inner @ mem[:, outer_dims:].T
    zero_inner = inner == 0
    mask_inner = (zero_inner * (1 << np.arange(outer_dims, ell, dtype=np.int64))).sum(axis=1)
    at_bound_inner = (inner == bound).any(axis=1)
    g_prev = g_cur = 0
    bad = 0
    for outer in itertools.product(range(bound + 1), repeat=outer_dims):
        o = np.array(outer, dtype=np.int64)
        q = q_inner + int(o @ fo @ o) + 2 * (inner @ (o @ cross))
        res = (res_inner + (mem[:, :outer_dims] @ o)) % den
        ok = (res == 0).all(axis=1)
        if not ok.any():
            continue
        mask = mask_inner + sum(1 << i for i in range(outer_dims) if outer[i] == 0)
        num = quot[mask[ok]] * q[ok]
        bad += int(np.count_nonzero(num % divisor))
        vals = num // divisor
        g_cur = int(np.gcd(g_cur, np.gcd.reduce(vals)))
        if bound not in outer:
            keep = ~at_bound_inner[ok]
            if keep.any():
                g_prev = int(np.gcd(g_prev, np.gcd.reduce(vals[keep])))
    return g_prev, g_cur, bad


def closed_values_numpy(points, fgram, quot, divisor):
    q = np.einsum("ij,jk,ik->i", points, fgram, points)
    mask = ((points == 0) * (1 << np.arange(points.shape[1], dtype=np.int64))).sum(axis=1)
    num = quot[mask] * q
    return num // divisor, num % divisor


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def expand_level_numba(level, cols):
        n, ell = level.shape
        count = 0
        for r in range(n):
            for i in range(ell):
                if level[r, i] > 0:
                    count += 1
        out = np.empty((count, ell), dtype=np.int64)
        k = 0
        # same ordering as the numpy path: grouped by reflection index
        for i in range(ell):
            for r in range(n):
                c = level[r, i]
                if c > 0:
                    for j in range(ell):
                        out[k, j] = level[r, j] - c * cols[i, j]
                    k += 1
        return out

    @njit(cache=True)
    def square_sum_numba(orbit, coroot):
        total = 0
        for r in range(orbit.shape[0]):
            p = 0
            for j in range(orbit.shape[1]):
                p += orbit[r, j] * coroot[j]
            total += p * p
        return total

    @njit(cache=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def box_gcd_numba(bound, fgram, mem, den, quot, divisor):
        ell = fgram.shape[0]
        k = mem.shape[0]
        lam = np.zeros(ell, dtype=np.int64)
        v = np.zeros(ell, dtype=np.int64)
        res = np.zeros(k, dtype=np.int64)
        q = 0
        mask = (1 << ell) - 1
        at_bound = 0
        g_prev = 0
        g_cur = 0
        bad = 0
        while True:
            ok = True
            for t in range(k):
                if res[t] != 0:
                    ok = False
                    break
            if ok:
                num = quot[mask] * q
                if num % divisor != 0:
                    bad += 1
                val = num // divisor
                g_cur = _gcd(g_cur, val)
                if at_bound == 0:
                    g_prev = _gcd(g_prev, val)
            i = 0
            while i < ell and lam[i] == bound:
                q += -2 * bound * v[i] + bound * bound * fgram[i, i]
                for j in range(ell):
                    v[j] -= bound * fgram[j, i]
                for t in range(k):
                    res[t] = (res[t] - bound * mem[t, i]) % den
                lam[i] = 0
                mask |= 1 << i
                at_bound -= 1
                i += 1
            if i == ell:
                break
            q += 2 * v[i] + fgram[i, i]
            for j in range(ell):
                v[j] += fgram[j, i]
            for t in range(k):
                res[t] = (res[t] + mem[t, i]) % den
            if lam[i] == 0:
                mask &= ~(1 << i)
            lam[i] += 1
            if lam[i] == bound:
                at_bound += 1
        return g_prev, g_cur, bad

    @njit(cache=True)
    def closed_values_numba(points, fgram, quot, divisor):
        n, ell = points.shape
        vals = np.empty(n, dtype=np.int64)
        rems = np.empty(n, dtype=np.int64)
        for r in range(n):
            q = 0
            mask = 0
            for i in range(ell):
                if points[r, i] == 0:
                    mask |= 1 << i
                for j in range(ell):
                    q += points[r, i] * fgram[i, j] * points[r, j]
            num = quot[mask] * q
            vals[r] = num // divisor
            rems[r] = num % divisor
        return vals, rems


def unique_rows(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    return np.unique(arr, axis=0)


KERNELS = {
    "numpy": {
        "expand_level": expand_level_numpy,
        "square_sum": square_sum_numpy,
        "box_gcd": box_gcd_numpy,
        "closed_values": closed_values_numpy,
    }
}
if HAS_NUMBA:
    KERNELS["numba"] = {
        "expand_level": expand_level_numba,
        "square_sum": lambda o, c: int(square_sum_numba(o, c)),
        "box_gcd": lambda *a: tuple(int(x) for x in box_gcd_numba(*a)),
        "closed_values": closed_values_numba,
    }


def expand_level(level, cols):
    return KERNELS[BACKEND]["expand_level"](level, cols)


def square_sum(orbit, coroot):
    return KERNELS[BACKEND]["square_sum"](orbit, coroot)


def box_gcd(bound, fgram, mem, den, quot, divisor, backend=None):
    return KERNELS[backend or BACKEND]["box_gcd"](bound, fgram, mem, den, quot, divisor)


def closed_values(points, fgram, quot, divisor, backend=None):
    return KERNELS[backend or BACKEND]["closed_values"](points, fgram, quot, divisor)
