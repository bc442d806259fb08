import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from traceform import _kernels
from traceform.dynkin import (
    _box_inputs,
    box_gcd_reference,
    character_box,
    group_index,
    orbit_index_closed,
    orbit_indices_batch,
)
from traceform.lattice import parse_group_spec
from traceform.rootsys import build_root_system

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])
SMALL_GROUPS = ["SL4/mu2", "SL6/mu3", "PSp6", "SO8", "HSpin12", "G2", "F4", "E6ad", "B3ad", "C3sc"]


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_box_gcd_matches_reference(backend, name):
    spec = parse_group_spec(name)
    bound = 3 if spec.root_system.rank > 4 else 4
    rep = group_index(spec, bound, backend=backend)
    assert (rep.previous, rep.value) == box_gcd_reference(spec, bound)


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_backends_agree_on_batch(name):
    spec = parse_group_spec(name)
    pts = character_box(spec, 2)
    results = [orbit_indices_batch(spec, pts, backend=b) for b in BACKENDS]
    expected = [orbit_index_closed(spec.root_system, p) for p in pts.tolist()]
    for r in results:
        assert r.tolist() == expected


@pytest.mark.parametrize("backend", BACKENDS)
def test_box_gcd_counts_non_integral(backend):
    # a deliberately wrong divisor leaves remainders the kernel must report
    spec = parse_group_spec("G2")
    fgram, mem, den, quot, divisor = _box_inputs(spec)
    *_, bad = _kernels.box_gcd(2, fgram, mem, den, quot, divisor * 7, backend=backend)
    assert bad > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_level_expansion_backends_agree(tr, coords):
    rs = build_root_system(*tr)
    level = np.array([coords[: rs.rank]], dtype=np.int64)
    cols = rs.simple_roots_fund
    outs = []
    for b in BACKENDS:
        lv, acc = level, []
        while len(lv):
            lv = _kernels.unique_rows(_kernels.KERNELS[b]["expand_level"](lv, cols))
            acc.append(lv)
        outs.append(np.concatenate(acc).tolist() if acc else [])
    assert all(o == outs[0] for o in outs)
    sq = {b: _kernels.KERNELS[b]["square_sum"](np.array(outs[0] or [[0] * rs.rank], dtype=np.int64), np.ones(rs.rank, dtype=np.int64)) for b in BACKENDS}
    assert len(set(sq.values())) == 1


def test_env_flag_selects_numpy():
    env = dict(os.environ, TRACEFORM_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from traceform import _kernels; print(_kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"
