"""Isogeny types as intermediate lattices Q <= T* <= P, and the constants E, E_q.

Weights live in fundamental-weight coordinates; cocharacters live in
simple-coroot coordinates, so the pairing between the two is the plain dot
product.  An isogeny type is recorded as the subgroup T*/Q of the
fundamental group P/Q, via extra generators of T* beyond the root lattice.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .errors import InvalidInput
from .rootsys import RootSystem, Weight, _mat_inverse, build_root_system

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


@lru_cache(maxsize=None)
def _pq_decomposition(rs: RootSystem):
    """Smith decomposition ``S A^T T = D`` of the root lattice inside P.

    ``lambda -> (lambda T) mod d`` is then an isomorphism
    P/Q -> prod Z/d_i onto the invariant factors.
    """
    a_t = Matrix(rs.cartan_matrix).T
    d, _s, t = smith_normal_decomp(a_t, domain=ZZ)
    diag = [int(abs(d[i, i])) for i in range(rs.rank)]
    factors = [(i, x) for i, x in enumerate(diag) if x > 1]
    return factors, t, t.inv()


def fundamental_group(rs: RootSystem) -> tuple[int, ...]:
    """Invariant factors of P/Q, e.g. ``(2, 2)`` for D4 and ``()`` for E8."""
    return tuple(d for _, d in _pq_decomposition(rs)[0])


def weight_class(rs: RootSystem, weight: Sequence[int]) -> tuple[int, ...]:
    """Image of a weight in P/Q, in invariant-factor coordinates."""
    factors, t, _ = _pq_decomposition(rs)
    v = Matrix([list(weight)]) * t
    return tuple(int(v[0, i]) % d for i, d in factors)


def weight_from_class(rs: RootSystem, cls: Sequence[int]) -> Weight:
    factors, _, t_inv = _pq_decomposition(rs)
    if len(cls) != len(factors):
        raise InvalidInput(f"{rs.name}: P/Q has {len(factors)} cyclic factors, got coordinates {list(cls)}")
    full = [0] * rs.rank
    for (i, d), c in zip(factors, cls):
        if isinstance(c, bool) or int(c) != c:
            raise InvalidInput(f"subgroup generator coordinates must be integers, got {list(cls)}")
        full[i] = int(c) % d
    v = Matrix([full]) * t_inv
    return Weight(int(x) for x in v)


@dataclass(frozen=True)
class GroupSpec:
    """A split almost-simple group: root system plus T*/Q.

    ``generators`` are weights (fundamental-weight coordinates) which,
    together with the root lattice, generate the character lattice.
    """

    root_system: RootSystem
    generators: tuple[Weight, ...]
    family: str
    params: tuple[tuple[str, int], ...] = ()

    @property
    def label(self) -> str:
        p = dict(self.params)
        f = self.family
        if f == "SL/mu":
            return f"SL{p['n']}/mu{p['m']}"
        if f in ("Sp", "PSp", "SO", "Spin", "PSO", "HSpin"):
            return f"{f}{p['n']}"
        if f in ("sc", "ad"):
            rs = self.root_system
            return f"{rs.name}{f}" if fundamental_group(rs) else rs.name
        return f"{self.root_system.name}[{f}]"

    @property
    def params_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.params)

    @cached_property
    def subgroup(self) -> tuple[tuple[int, ...], ...]:
        """Generators of T*/Q in invariant-factor coordinates."""
        return tuple(weight_class(self.root_system, g) for g in self.generators)

    @property
    def is_simply_connected(self) -> bool:
        return resolve_lattices(self).index_in_p == 1

    @property
    def is_adjoint(self) -> bool:
        return resolve_lattices(self).index_over_q == 1

    def contains(self, weight: Sequence[int]) -> bool:
        """Whether a weight is a character of the maximal torus."""
        return resolve_lattices(self).contains(weight)

    def __hash__(self):
        return hash((self.root_system.name, self.generators))

    def __eq__(self, other):
        return (
            isinstance(other, GroupSpec)
            and self.root_system is other.root_system
            and self.generators == other.generators
        )


def simply_connected(rs: RootSystem) -> GroupSpec:
    gens = tuple(Weight(int(i == j) for j in range(rs.rank)) for i in range(rs.rank))
    return GroupSpec(rs, gens, "sc")


def adjoint(rs: RootSystem) -> GroupSpec:
    return GroupSpec(rs, (), "ad")


def from_subgroup(rs: RootSystem, generators: Sequence[Sequence[int]]) -> GroupSpec:
    """Group whose T*/Q is generated by the given invariant-factor coordinates."""
    gens = tuple(weight_from_class(rs, g) for g in generators)
    return GroupSpec(rs, gens, "subgroup", tuple((f"g{i}", sum(g)) for i, g in enumerate(gens)))


def _unit(rank: int, i: int, scale: int = 1) -> Weight:
    return Weight(scale * int(j == i) for j in range(rank))


def special_linear_quotient(n: int, m: int) -> GroupSpec:
    """SL_n / mu_m: characters with sum i*c_i divisible by m."""
    if n < 2:
        raise InvalidInput("SL_n needs n >= 2")
    if m < 1 or n % m:
        raise InvalidInput(f"m must divide n for SL{n}/mu{m}")
    rs = build_root_system("A", n - 1)
    return GroupSpec(rs, (_unit(n - 1, 0, m),), "SL/mu", (("n", n), ("m", m)))


def _orthogonal_rank(n: int) -> tuple[str, int]:
    if n % 2:
        if n < 5:
            raise InvalidInput(f"odd orthogonal groups need n >= 5 (type B_l, l >= 2), got {n}")
        return "B", (n - 1) // 2
    if n < 6:
        raise InvalidInput(f"even orthogonal groups need n >= 6 (type D_l, l >= 3), got {n}")
    return "D", n // 2


def named_group(family: str, n: int, m: int | None = None) -> GroupSpec:
    """Groups from the usual families: SL/mu, Sp, PSp, SO, Spin, PSO, HSpin."""
    if family == "SL/mu":
        return special_linear_quotient(n, m if m is not None else 1)
    if family in ("Sp", "PSp"):
        if n % 2 or n < 4:
            raise InvalidInput(f"{family}_n needs even n >= 4, got {n}")
        rs = build_root_system("C", n // 2)
        base = simply_connected(rs) if family == "Sp" else adjoint(rs)
        return GroupSpec(rs, base.generators, family, (("n", n),))
    if family in ("SO", "Spin", "PSO"):
        t, ell = _orthogonal_rank(n)
        rs = build_root_system(t, ell)
        if family == "Spin":
            gens = simply_connected(rs).generators
        elif family == "PSO" or t == "B":
            gens = ()
        else:
            gens = (_unit(ell, 0),)
        return GroupSpec(rs, gens, family, (("n", n),))
    if family == "HSpin":
        if n % 4 or n < 12:
            raise InvalidInput(f"HSpin_n needs n divisible by 4 and n >= 12, got {n}")
        ell = n // 2
        rs = build_root_system("D", ell)
        # omega_l lies in T*; the other half-spin quotient is its image under the diagram flip
        return GroupSpec(rs, (_unit(ell, ell - 1),), "HSpin", (("n", n),))
    raise InvalidInput(f"unknown group family {family!r}")


_SPEC_PATTERNS = [
    (re.compile(r"^SL(\d+)/mu(\d+)$"), lambda g: named_group("SL/mu", int(g[1]), int(g[2]))),
    (re.compile(r"^SL(\d+)$"), lambda g: named_group("SL/mu", int(g[1]), 1)),
    (re.compile(r"^PGL(\d+)$"), lambda g: named_group("SL/mu", int(g[1]), int(g[1]))),
    (re.compile(r"^(Sp|PSp|SO|Spin|PSO|HSpin)(\d+)$"), lambda g: named_group(g[1], int(g[2]))),
]


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a group-spec string.

    Accepted forms: ``SL9/mu3``, ``SL4``, ``PGL5``, ``Sp10``, ``PSp10``,
    ``SO8``, ``Spin11``, ``PSO8``, ``HSpin12``, and ``<type><rank>sc`` /
    ``<type><rank>ad`` such as ``E6sc``, ``E7ad``, ``B3ad``.  Types with
    trivial fundamental group may omit the suffix (``E8``, ``F4``, ``G2``).
    """
    s = text.strip()
    for pat, make in _SPEC_PATTERNS:
        mt = pat.match(s)
        if mt:
            return make(mt)
    mt = re.match(r"^([A-Ga-g])(\d+)(sc|ad)?$", s)
    if mt:
        rs = build_root_system(mt[1].upper(), int(mt[2]))
        suffix = mt[3]
        if suffix is None:
            if fundamental_group(rs):
                raise InvalidInput(f"{s}: say {s}sc or {s}ad, P/Q is nontrivial")
            suffix = "sc"
        return simply_connected(rs) if suffix == "sc" else adjoint(rs)
    raise InvalidInput(f"unknown group spec {text!r}")


@dataclass(frozen=True)
class LatticePresentation:
    root_system: RootSystem
    tstar_basis: IntMatrix
    tsub_basis: RatMatrix
    gram_b: RatMatrix
    q_diagonal: tuple[Fraction, ...]

    @cached_property
    def index_in_p(self) -> int:
        """[P : T*]."""
        return abs(int(Matrix(self.tstar_basis).det()))

    @cached_property
    def index_over_q(self) -> int:
        """[T* : Q]."""
        det_q = abs(int(Matrix(self.root_system.cartan_matrix).det()))
        return det_q // self.index_in_p

    @cached_property
    def membership(self) -> tuple[tuple[tuple[int, ...], ...], int]:
        """Integer matrix M and modulus d with: lambda in T* iff M lambda = 0 mod d."""
        den = lcm(*(x.denominator for row in self.tsub_basis for x in row))
        mat = tuple(tuple(int(x * den) for x in row) for row in self.tsub_basis)
        return mat, den

    def contains(self, weight: Sequence[int]) -> bool:
        mat, den = self.membership
        return all(sum(a * c for a, c in zip(row, weight)) % den == 0 for row in mat)


def lattice_from_basis(rs: RootSystem, tstar_basis: Sequence[Sequence[int]]) -> LatticePresentation:
    """Presentation built from any basis of T* (rows, fundamental-weight coordinates)."""
    basis = tuple(tuple(int(x) for x in row) for row in tstar_basis)
    ell = rs.rank
    if len(basis) != ell or any(len(row) != ell for row in basis):
        raise InvalidInput(f"T* basis for {rs.name} must be {ell}x{ell}")
    inv = _mat_inverse([[Fraction(x) for x in row] for row in basis])
    # dual basis: rows N with B N^T = I, i.e. N = (B^{-1})^T
    tsub = tuple(tuple(inv[j][i] for j in range(ell)) for i in range(ell))
    g = rs.coroot_gram
    gram = tuple(
        tuple(
            sum((tsub[a][i] * g[i][j] * tsub[b][j] for i in range(ell) for j in range(ell) if tsub[a][i] and tsub[b][j]), Fraction(0))
            for b in range(ell)
        )
        for a in range(ell)
    )
    qd = tuple(gram[i][i] / 2 for i in range(ell))
    return LatticePresentation(rs, basis, tsub, gram, qd)


@lru_cache(maxsize=None)
def resolve_lattices(spec: GroupSpec) -> LatticePresentation:
    rs = spec.root_system
    ell = rs.rank
    for gen in spec.generators:
        if len(gen) != ell:
            raise InvalidInput(f"generator {list(gen)} has wrong length for {rs.name}")
    rows = [list(r) for r in rs.simple_roots_fund.tolist()] + [list(g) for g in spec.generators]
    h = hermite_normal_form(Matrix(rows).T).T
    basis = [[int(h[i, j]) for j in range(ell)] for i in range(h.rows)]
    if len(basis) != ell:
        raise InvalidInput("character lattice generators do not span a full-rank lattice")
    return lattice_from_basis(rs, basis)


def _as_presentation(spec) -> LatticePresentation:
    return spec if isinstance(spec, LatticePresentation) else resolve_lattices(spec)


def compute_E(spec: GroupSpec | LatticePresentation) -> int:
    """Smallest positive integer e with e * b~ integral on the cocharacter lattice."""
    lp = _as_presentation(spec)
    return lcm(*(x.denominator for row in lp.gram_b for x in row))


def compute_Eq(spec: GroupSpec | LatticePresentation) -> int:
    """Same for the quadratic refinement q~(v) = b~(v, v)/2.

    A quadratic form is integral on a lattice iff it is integral on a basis
    and its polar form is integral on pairs of distinct basis vectors.
    """
    lp = _as_presentation(spec)
    ell = len(lp.gram_b)
    dens = [x.denominator for x in lp.q_diagonal]
    dens += [lp.gram_b[i][j].denominator for i in range(ell) for j in range(i + 1, ell)]
    return lcm(*dens)


def exponent(group: tuple[int, ...]) -> int:
    return lcm(*group) if group else 1


def sublattice_of(spec_a: GroupSpec, spec_b: GroupSpec) -> bool:
    """Whether T*(a) is contained in T*(b)."""
    lb = resolve_lattices(spec_b)
    return all(lb.contains(row) for row in resolve_lattices(spec_a).tstar_basis)

