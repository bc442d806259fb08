"""Which characteristics admit a nonzero or nondegenerate trace form.

Every trace form vanishes in characteristic p iff p divides N(G)/E(G); a
nondegenerate one exists iff p is very good.  Both are decided from
computed invariants.  Non-split (twisted) groups are answered from a fixed
lookup table, kept apart from the computed path and marked as such.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .dynkin import DEFAULT_BOUND, GroupIndexReport, group_index
from .errors import Inconclusive, InvalidInput
from .lattice import GroupSpec, compute_E, named_group, parse_group_spec
from .slnm import prime_factors

OUT_OF_SCOPE = "out of scope"
LOOKUP_PROVENANCE = "paper-sourced lookup"
COMPUTED_PROVENANCE = "computed"


def check_characteristic(p) -> int:
    if isinstance(p, bool) or int(p) != p or p < 0:
        raise InvalidInput(f"characteristic must be 0 or a prime, got {p!r}")
    p = int(p)
    if p != 0 and (p < 2 or prime_factors(p) != {p}):
        raise InvalidInput(f"characteristic must be 0 or a prime, got {p}")
    return p


def very_good_excluded_primes(spec: GroupSpec) -> frozenset[int]:
    """Primes that are not very good for the group's type."""
    rs = spec.root_system
    t = rs.type_letter
    if t == "A":
        return prime_factors(rs.rank + 1)
    if t in "BCD":
        return frozenset({2})
    if t == "E" and rs.rank == 8:
        return frozenset({2, 3, 5})
    return frozenset({2, 3})


@dataclass(frozen=True)
class ClassificationResult:
    group: str
    n_of_g: int
    stabilized: bool
    e_of_g: int
    ratio_primes: frozenset[int]
    very_good_primes_excluded: frozenset[int]
    verdicts: dict[int, tuple[bool, bool]] = field(default_factory=dict, hash=False)

    @property
    def zero_primes(self) -> frozenset[int]:
        return self.ratio_primes

    @property
    def degenerate_primes(self) -> frozenset[int]:
        return self.very_good_primes_excluded


def _report(spec: GroupSpec, bound: int) -> GroupIndexReport:
    return group_index(spec, bound)


def classify(spec: GroupSpec, chars: Iterable[int] = (), bound: int = DEFAULT_BOUND) -> ClassificationResult:
    rep = _report(spec, bound)
    e = compute_E(spec)
    if rep.value % e:
        raise AssertionError(f"E={e} does not divide N={rep.value} for {spec.label}")
    ratio = prime_factors(rep.value // e)
    excluded = very_good_excluded_primes(spec)
    verdicts = {}
    for p in chars:
        p = check_characteristic(p)
        if p == 0:
            verdicts[p] = (True, True)
            continue
        if not rep.stabilized:
            raise Inconclusive(f"N({spec.label}) did not stabilize at bound {bound}")
        verdicts[p] = (p not in ratio, p not in excluded)
    return ClassificationResult(spec.label, rep.value, rep.stabilized, e, ratio, excluded, verdicts)


def trace_zero_all(spec: GroupSpec, p: int, bound: int = DEFAULT_BOUND) -> bool:
    """True iff every representation has zero trace form in characteristic p."""
    p = check_characteristic(p)
    if p == 0:
        return False
    rep = _report(spec, bound)
    if not rep.stabilized:
        raise Inconclusive(f"N({spec.label}) did not stabilize at bound {bound}")
    return (rep.value // compute_E(spec)) % p == 0


def trace_zero_single(n_rho: int, e_g: int, p: int) -> bool:
    """True iff the trace form of a representation with index n_rho vanishes mod p."""
    p = check_characteristic(p)
    if e_g < 1 or n_rho % e_g:
        raise InvalidInput(f"E={e_g} must divide N(rho)={n_rho}")
    if p == 0:
        return n_rho == 0
    return (n_rho // e_g) % p == 0


def nondegenerate_exists(spec: GroupSpec, p: int) -> bool:
    p = check_characteristic(p)
    return p == 0 or p not in very_good_excluded_primes(spec)


# -------------------------------------------------------------- twisted forms

TWISTS = ("split", "2A", "1D", "2D", "3D4", "6D4", "2E6")

# Lookup data for absolutely almost simple, non-split groups.  Values are
# taken as published; nothing here is derived from the lattice machinery.
TWISTED_TABLE_VERSION = "1"
TWISTED_DEGENERATE = {
    "2A (n odd >= 3)": "p divides 2n",
    "3D4, 6D4": {2, 3},
    "otherwise": "p not very good for the split form",
}
TWISTED_ZERO = {
    "B_n (n>=3), C_n (n>=2), 1D_n or 2D_n (n>=4), E6 (any form)": {2},
    "3D4, 6D4, E7": {2, 3},
}


@dataclass(frozen=True)
class TwistedVerdict:
    degenerate_always: bool
    zero_always: Union[bool, str]
    provenance: str = LOOKUP_PROVENANCE


def _check_twist(spec: GroupSpec, twist: str) -> None:
    rs = spec.root_system
    t, r = rs.type_letter, rs.rank
    ok = {
        "split": True,
        "2A": t == "A" and r >= 2,
        "1D": t == "D",
        "2D": t == "D",
        "3D4": (t, r) == ("D", 4),
        "6D4": (t, r) == ("D", 4),
        "2E6": (t, r) == ("E", 6),
    }.get(twist)
    if ok is None:
        raise InvalidInput(f"unknown twist {twist!r}; expected one of {', '.join(TWISTS)}")
    if not ok:
        raise InvalidInput(f"twist {twist} does not apply to type {rs.name}")
    if twist in ("3D4", "6D4") and not (spec.is_simply_connected or spec.is_adjoint):
        raise InvalidInput("only the simply connected and adjoint D4 groups admit a triality twist")


def twisted_classify(spec: GroupSpec, twist: str, p: int) -> TwistedVerdict:
    """Table lookup for groups of the given (possibly twisted) form."""
    p = check_characteristic(p)
    _check_twist(spec, twist)
    rs = spec.root_system
    if p == 0:
        return TwistedVerdict(False, False)

    n = rs.rank + 1
    if twist == "2A" and n % 2 == 1:
        degenerate = (2 * n) % p == 0
    elif twist in ("3D4", "6D4"):
        degenerate = p in (2, 3)
    else:
        degenerate = p in very_good_excluded_primes(spec)

    t, r = rs.type_letter, rs.rank
    effectively_a = t == "A" or (t == "D" and r == 3)
    if spec.is_simply_connected or effectively_a:
        zero: Union[bool, str] = OUT_OF_SCOPE
    elif twist in ("3D4", "6D4") or (t, r) == ("E", 7):
        zero = p in (2, 3)
    elif t in "BCD" or (t, r) == ("E", 6):
        zero = p == 2
    else:  # pragma: no cover - every non-simply-connected type is listed above
        zero = OUT_OF_SCOPE
    return TwistedVerdict(degenerate, zero)


# ------------------------------------------------- prime table by family


def table1_groups(max_rank: int) -> list[GroupSpec]:
    """One group per row family and parameter with rank <= max_rank.

    Orthogonal groups start at n = 7; smaller ones coincide with type A or C.
    """
    if max_rank < 1:
        raise InvalidInput("max rank must be positive")
    out: list[GroupSpec] = []
    for n in range(2, max_rank + 2):
        for m in range(1, n + 1):
            if n % m == 0:
                out.append(named_group("SL/mu", n, m))
    for n in range(2, max_rank + 1):
        out.append(named_group("Sp", 2 * n))
        out.append(named_group("PSp", 2 * n))
    for n in range(7, 2 * max_rank + 2):
        if n // 2 > max_rank:
            continue
        for fam in ("SO", "Spin", "PSO"):
            out.append(named_group(fam, n))
    for k in range(3, max_rank // 2 + 1):
        out.append(named_group("HSpin", 4 * k))
    for name in ("G2", "F4", "E6sc", "E6ad", "E7sc", "E7ad", "E8"):
        spec = parse_group_spec(name)
        if spec.root_system.rank <= max_rank:
            out.append(spec)
    return out


@dataclass(frozen=True)
class Table1Row:
    family: str
    params: str
    label: str
    n_of_g: int
    e_of_g: int
    ratio_primes: tuple[int, ...]
    degenerate_primes: tuple[int, ...]
    zero_primes: tuple[int, ...]
    flags: tuple[str, ...]


def table1_row(spec: GroupSpec, bound: int = DEFAULT_BOUND) -> Table1Row:
    res = classify(spec, (), bound)
    flags = () if res.stabilized else ("unstabilized",)
    fam = spec.family if spec.family not in ("sc", "ad") else spec.label
    return Table1Row(
        family=fam,
        params=spec.params_text,
        label=spec.label,
        n_of_g=res.n_of_g,
        e_of_g=res.e_of_g,
        ratio_primes=tuple(sorted(res.ratio_primes)),
        degenerate_primes=tuple(sorted(res.degenerate_primes)),
        zero_primes=tuple(sorted(res.zero_primes)),
        flags=flags,
    )


def table1_render(max_rank: int = 8, bound: int = DEFAULT_BOUND) -> list[Table1Row]:
    return [table1_row(spec, bound) for spec in table1_groups(max_rank)]
