from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traceform.errors import InvalidInput
from traceform.lattice import (
    adjoint,
    compute_E,
    compute_Eq,
    exponent,
    from_subgroup,
    fundamental_group,
    lattice_from_basis,
    named_group,
    parse_group_spec,
    resolve_lattices,
    simply_connected,
    sublattice_of,
    weight_class,
)
from traceform.rootsys import all_simple_types, build_root_system

TYPES = all_simple_types(8)


def test_fundamental_groups():
    for n in range(2, 10):
        assert fundamental_group(build_root_system("A", n - 1)) == (n,)
    assert fundamental_group(build_root_system("E", 8)) == ()
    assert fundamental_group(build_root_system("D", 4)) == (2, 2)
    assert fundamental_group(build_root_system("D", 5)) == (4,)
    assert fundamental_group(build_root_system("E", 6)) == (3,)
    assert fundamental_group(build_root_system("E", 7)) == (2,)
    for t in "BC":
        assert fundamental_group(build_root_system(t, 3)) == (2,)
    assert fundamental_group(build_root_system("G", 2)) == ()


@pytest.mark.parametrize("t,r", TYPES)
def test_presentation_invariants(t, r):
    rs = build_root_system(t, r)
    for spec in (simply_connected(rs), adjoint(rs)):
        lp = resolve_lattices(spec)
        # roots lie in T*
        assert all(lp.contains(row) for row in rs.simple_roots_fund.tolist())
        # duality
        for i, a in enumerate(lp.tstar_basis):
            for j, b in enumerate(lp.tsub_basis):
                assert sum(x * y for x, y in zip(a, b)) == int(i == j)
        assert lp.index_in_p * lp.index_over_q == int(round(abs(np.linalg.det(np.array(rs.cartan_matrix, dtype=float)))))


@pytest.mark.parametrize("t,r", TYPES)
def test_simply_connected_is_coroot_lattice(t, r):
    rs = build_root_system(t, r)
    lp = resolve_lattices(simply_connected(rs))
    assert lp.index_in_p == 1
    assert all(x.denominator == 1 for row in lp.tsub_basis for x in row)
    assert compute_E(simply_connected(rs)) == 1
    # long coroots have square length 2 under b~
    for k in rs.long_roots[:5]:
        c = rs.coroot_coords(k)
        g = rs.coroot_gram
        assert sum(c[i] * g[i][j] * c[j] for i in range(r) for j in range(r)) == 2


@pytest.mark.parametrize("t,r", TYPES)
def test_Eq_is_E_or_twice(t, r):
    rs = build_root_system(t, r)
    for spec in (simply_connected(rs), adjoint(rs)):
        assert compute_Eq(spec) in (compute_E(spec), 2 * compute_E(spec))


@pytest.mark.parametrize("t,r", [(t, r) for t, r in TYPES if t in "ADE"])
def test_adjoint_simply_laced_E_is_exponent(t, r):
    rs = build_root_system(t, r)
    assert compute_E(adjoint(rs)) == exponent(fundamental_group(rs))


@pytest.mark.parametrize("n", range(2, 9))
def test_psp_E(n):
    assert compute_E(named_group("PSp", 2 * n)) == (1 if n % 2 == 0 else 2)


@pytest.mark.parametrize("n", range(5, 13))
def test_so_E(n):
    assert compute_E(named_group("SO", n)) == 1


@pytest.mark.parametrize("k", range(3, 7))
def test_hspin_E(k):
    assert compute_E(named_group("HSpin", 4 * k)) == (1 if k % 2 == 0 else 2)


def test_so_even_cocharacter_contains_omega1():
    spec = named_group("SO", 10)
    lp = resolve_lattices(spec)
    g = spec.root_system.coroot_gram
    # omega_1 = alpha_1 + alpha_2 + alpha_3 + (alpha_4 + alpha_5)/2 in coroot coordinates
    w = (1, 1, 1, Fraction(1, 2), Fraction(1, 2))
    assert all(Fraction(sum(a * b for a, b in zip(w, row))).denominator == 1 for row in lp.tstar_basis)
    assert sum(w[i] * g[i][j] * w[j] for i in range(5) for j in range(5)) == 1


@pytest.mark.parametrize("n", range(2, 25))
def test_special_linear_E(n):
    for m in range(1, n + 1):
        if n % m == 0:
            assert compute_E(named_group("SL/mu", n, m)) == m // gcd(m, n // m)


def test_Eq_examples():
    assert compute_Eq(adjoint(build_root_system("A", 1))) == 4
    assert compute_Eq(named_group("SO", 8)) == 2
    assert compute_Eq(named_group("SO", 12)) == 2
    assert compute_E(named_group("SO", 12)) == 1
    for t, r in [("E", 8), ("A", 3), ("D", 5), ("B", 3)]:
        sc = simply_connected(build_root_system(t, r))
        assert compute_Eq(sc) == compute_E(sc)


def test_E_divides_adjoint_E():
    for n in range(2, 13):
        ad = named_group("SL/mu", n, n)
        for m in range(1, n + 1):
            if n % m == 0:
                g = named_group("SL/mu", n, m)
                assert sublattice_of(ad, g)
                assert compute_E(ad) % compute_E(g) == 0
    for name in ["SO8", "Spin8", "HSpin12", "PSp6", "Sp6", "E6sc", "E7sc"]:
        g = parse_group_spec(name)
        ad = adjoint(g.root_system)
        assert sublattice_of(ad, g)
        assert compute_E(ad) % compute_E(g) == 0


_BASES = [("A", 3), ("D", 4), ("B", 3), ("C", 4), ("E", 6), ("E", 7), ("D", 6)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_BASES), st.integers(0, 2**32 - 1), st.booleans())
def test_basis_independence(tr, seed, use_adjoint):
    rs = build_root_system(*tr)
    spec = adjoint(rs) if use_adjoint else simply_connected(rs)
    lp = resolve_lattices(spec)
    rng = np.random.default_rng(seed)
    ell = rs.rank
    # random unimodular change of basis from elementary row operations
    u = np.eye(ell, dtype=np.int64)
    for _ in range(3 * ell):
        i, j = rng.choice(ell, 2, replace=False)
        u[i] += int(rng.integers(-2, 3)) * u[j]
    new = (u @ np.array(lp.tstar_basis, dtype=np.int64)).tolist()
    other = lattice_from_basis(rs, new)
    assert compute_E(other) == compute_E(lp)
    assert compute_Eq(other) == compute_Eq(lp)


def test_subgroup_constructor():
    d4 = build_root_system("D", 4)
    so8 = named_group("SO", 8)
    via_class = from_subgroup(d4, [weight_class(d4, (1, 0, 0, 0))])
    assert resolve_lattices(via_class).tstar_basis == resolve_lattices(so8).tstar_basis
    assert compute_E(via_class) == 1


@pytest.mark.parametrize(
    "text,label",
    [("SL9/mu3", "SL9/mu3"), ("SL4", "SL4/mu1"), ("PGL5", "SL5/mu5"), ("Spin11", "Spin11"), ("HSpin12", "HSpin12"),
     ("PSp10", "PSp10"), ("E6sc", "E6sc"), ("E6ad", "E6ad"), ("SO8", "SO8"), ("PSO8", "PSO8"), ("E8", "E8"),
     ("G2", "G2"), ("b3ad", "B3ad")],
)
def test_parse_group_spec(text, label):
    assert parse_group_spec(text).label == label


@pytest.mark.parametrize("text", ["SL4/mu3", "E6", "HSpin8", "HSpin10", "Sp5", "SO4", "SO3", "X2", "", "SL1", "E9ad"])
def test_parse_group_spec_rejects(text):
    with pytest.raises(InvalidInput):
        parse_group_spec(text)


def test_isogeny_flags():
    assert parse_group_spec("Spin9").is_simply_connected
    assert parse_group_spec("SO9").is_adjoint
    so8 = parse_group_spec("SO8")
    assert not so8.is_adjoint and not so8.is_simply_connected
    assert so8.contains((1, 0, 0, 0)) and not so8.contains((0, 0, 0, 1))
