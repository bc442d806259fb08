"""Explicit matrix checks of the trace-form identities.

Integral Chevalley models of sl_n (natural and adjoint) let the identity
``Tr_rho = (N(rho)/E(G)) * b`` be checked entry by entry on actual matrices,
and the quadratic refinement ``s_rho`` be checked by polarization.  The
baby Verma power sums are checked for small primes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classify import check_characteristic
from .dynkin import irrep_index
from .errors import InvalidInput
from .lattice import compute_E, simply_connected
from .rootsys import build_root_system

MAX_SL = 5
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class MatrixRep:
    """Images of a Chevalley basis of sl_n under a representation.

    ``labels`` are ``h1 .. h{n-1}`` followed by ``x{i}{j}`` (root e_i - e_j),
    and ``roots`` gives, for each label, None (Cartan part) or ``(i, j)``.
    """

    n: int
    name: str
    labels: tuple[str, ...]
    roots: tuple[tuple[int, int] | None, ...]
    images: tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return self.images[0].shape[0]

    def element(self, coeffs: Sequence[int]) -> np.ndarray:
        if len(coeffs) != len(self.images):
            raise InvalidInput(f"need {len(self.images)} coefficients, got {len(coeffs)}")
        out = np.zeros_like(self.images[0], dtype=object)
        for c, m in zip(coeffs, self.images):
            if c:
                out = out + int(c) * m.astype(object)
        return out


def _check_n(n: int) -> None:
    if isinstance(n, bool) or int(n) != n or not 2 <= n <= MAX_SL:
        raise InvalidInput(f"matrix models are built for 2 <= n <= {MAX_SL}, got {n!r}")


def _basis(n: int):
    labels, roots = [], []
    for k in range(1, n):
        labels.append(f"h{k}")
        roots.append(None)
    for i, j in itertools.permutations(range(1, n + 1), 2):
        labels.append(f"x{i}{j}")
        roots.append((i, j))
    return tuple(labels), tuple(roots)


def chevalley_sl(n: int) -> MatrixRep:
    """Natural representation: h_k = E_kk - E_{k+1,k+1}, x_ij = E_ij."""
    _check_n(n)
    labels, roots = _basis(n)
    images = []
    for r in roots:
        m = np.zeros((n, n), dtype=np.int64)
        if r is None:
            k = len(images)
            m[k, k], m[k + 1, k + 1] = 1, -1
        else:
            m[r[0] - 1, r[1] - 1] = 1
        images.append(m)
    rep = MatrixRep(n, f"sl{n} natural", labels, roots, tuple(images))
    _check_relations(rep)
    return rep


def _coordinates(n: int, roots, mat: np.ndarray) -> np.ndarray:
    """Coordinates of a traceless n x n matrix in the Chevalley basis.

    The Cartan part diag(d) equals sum_k (d_1 + ... + d_k) h_k.
    """
    diag = np.cumsum(np.diag(mat))
    if diag[-1] != 0:
        raise AssertionError("matrix is not traceless")
    out = []
    for r in roots:
        out.append(diag[len(out)] if r is None else mat[r[0] - 1, r[1] - 1])
    return np.array(out, dtype=np.int64)


def adjoint_of(rep: MatrixRep) -> MatrixRep:
    """Adjoint representation, with ad(x) written in the same Chevalley basis."""
    nat = chevalley_sl(rep.n)
    basis = nat.images
    images = []
    for x in basis:
        cols = [_coordinates(rep.n, nat.roots, x @ y - y @ x) for y in basis]
        images.append(np.stack(cols, axis=1))
    out = MatrixRep(rep.n, f"sl{rep.n} adjoint", nat.labels, nat.roots, tuple(images))
    _check_relations(out)
    return out


def _check_relations(rep: MatrixRep) -> None:
    """Traceless images and [x_a, x_-a] = h_a for the simple roots."""
    for m in rep.images:
        if np.trace(m) != 0:
            raise AssertionError(f"{rep.name}: image with nonzero trace")
    index = {lab: k for k, lab in enumerate(rep.labels)}
    for k in range(1, rep.n):
        e = rep.images[index[f"x{k}{k + 1}"]]
        f = rep.images[index[f"x{k + 1}{k}"]]
        if not np.array_equal(e @ f - f @ e, rep.images[index[f"h{k}"]]):
            raise AssertionError(f"{rep.name}: bracket relation fails for simple root {k}")


def _root_coords(n: int, ij: tuple[int, int]) -> tuple[int, ...]:
    i, j = ij
    lo, hi = min(i, j), max(i, j)
    sign = 1 if i < j else -1
    return tuple(sign if lo <= k < hi else 0 for k in range(1, n))


def btilde_gram(n: int) -> list[list[Fraction]]:
    """The normalized invariant form on the Chevalley basis of sl_n.

    Built from root data only: coroot inner products on the Cartan part,
    ``(a^vee, a^vee)/2`` between x_a and x_-a, zero elsewhere.
    """
    _check_n(n)
    rs = build_root_system("A", n - 1)
    labels, roots = _basis(n)
    cg = rs.coroot_gram
    size = len(labels)
    gram = [[Fraction(0)] * size for _ in range(size)]
    for a, ra in enumerate(roots):
        for b, rb in enumerate(roots):
            if ra is None and rb is None:
                gram[a][b] = Fraction(cg[a][b])
            elif ra is not None and rb is not None and ra == rb[::-1]:
                # simply laced: coroot coordinates equal root coordinates
                c = _root_coords(n, ra)
                sq = sum(ci * cg[s][t] * cj for s, ci in enumerate(c) for t, cj in enumerate(c))
                gram[a][b] = Fraction(sq) / 2
    return gram


def trace_gram(rep: MatrixRep, modulus: int = 0) -> list[list[int]]:
    """Gram matrix ``trace(rho(x_a) rho(x_b))`` on the basis, exact, optionally mod p."""
    modulus = check_characteristic(modulus)
    imgs = [m.astype(object) for m in rep.images]
    gram = [[int(np.trace(a @ b)) for b in imgs] for a in imgs]
    if modulus:
        gram = [[x % modulus for x in row] for row in gram]
    return gram


def s_rho(rep: MatrixRep, coeffs: Sequence[int], modulus: int = 0) -> int:
    """Quadratic refinement: minus the second elementary symmetric function of rho(x).

    Computed as ``(tr(M^2) - tr(M)^2)/2`` over the integers, then reduced.
    """
    modulus = check_characteristic(modulus)
    m = rep.element(coeffs)
    t1, t2 = int(np.trace(m)), int(np.trace(m @ m))
    num = t2 - t1 * t1
    assert num % 2 == 0
    val = num // 2
    return val % modulus if modulus else val


def baby_verma_trace(p: int, a: int) -> int:
    """Sum of squared h-weights a, a-2, ..., a-2(p-1) of a baby Verma module, mod p."""
    p = check_characteristic(p)
    if p == 0:
        raise InvalidInput("baby Verma sums need a prime characteristic")
    return sum((a - 2 * i) ** 2 for i in range(p)) % p


def primes_up_to(limit: int) -> list[int]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, int(limit**0.5) + 1):
        if sieve[k]:
            sieve[k * k :: k] = False
    return np.flatnonzero(sieve).tolist()


# -------------------------------------------------------------- suites


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def rep_index(rep: MatrixRep) -> int:
    """Dynkin index of a built model, from its highest weight."""
    r = rep.n - 1
    if rep.name.endswith("natural"):
        hw = [1] + [0] * (r - 1)
    else:
        hw = [2] if r == 1 else [1] + [0] * (r - 2) + [1]
    return irrep_index(build_root_system("A", r), hw)


def check_trace_identity(rep: MatrixRep) -> list[Check]:
    rs = build_root_system("A", rep.n - 1)
    ratio = Fraction(rep_index(rep), compute_E(simply_connected(rs)))
    gram = trace_gram(rep)
    expected = [[ratio * x for x in row] for row in btilde_gram(rep.n)]
    out = [Check(f"{rep.name}: trace Gram = {ratio} * b", gram == expected)]
    for p in SMALL_PRIMES:
        zero = not any(x for row in trace_gram(rep, p) for x in row)
        predicted = ratio.numerator % p == 0
        out.append(Check(f"{rep.name}: vanishes mod {p} iff {p} | {ratio}", zero == predicted))
    return out


def check_polarization(rep: MatrixRep, pairs: int = 50, seed: int = 0, span: int = 3) -> Check:
    """s(x+y) - s(x) - s(y) equals the trace pairing on random integer elements."""
    rng = np.random.default_rng(seed)
    gram = trace_gram(rep)
    size = len(rep.labels)
    for _ in range(pairs):
        x = rng.integers(-span, span + 1, size).tolist()
        y = rng.integers(-span, span + 1, size).tolist()
        xy = [a + b for a, b in zip(x, y)]
        lhs = s_rho(rep, xy) - s_rho(rep, x) - s_rho(rep, y)
        rhs = sum(x[i] * gram[i][j] * y[j] for i in range(size) for j in range(size))
        if lhs != rhs:
            return Check(f"{rep.name}: polarization of s", False, f"x={x} y={y}")
    return Check(f"{rep.name}: polarization of s", True)


def trace_suite() -> list[Check]:
    out = []
    for n in range(2, MAX_SL + 1):
        nat = chevalley_sl(n)
        for rep in (nat, adjoint_of(nat)):
            out.extend(check_trace_identity(rep))
            out.append(check_polarization(rep))
    return out


def appendix_suite(limit: int = 97) -> list[Check]:
    out = []
    for p in primes_up_to(limit):
        if p == 2:
            continue
        want = 2 if p == 3 else 0
        vals = {baby_verma_trace(p, a) for a in range(p)}
        out.append(Check(f"baby Verma sum mod {p} = {want}", vals == {want}, f"values {sorted(vals)}"))
    return out


SUITES = {"trace": trace_suite, "appendix": appendix_suite}


def run_suite(name: str = "all") -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; expected all, {', '.join(SUITES)}")
    return SUITES[name]()
