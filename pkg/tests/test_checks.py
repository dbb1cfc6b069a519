"""Verification harness: registry, reports, determinism and sweeps."""

import io

import numpy as np
import pytest

from kreinrel.boundary import identity_obt
from kreinrel.checks import (
    SWEEP_COLUMNS,
    THEOREM_IDS,
    CheckReport,
    check_theorem,
    weyl_sweep,
)
from kreinrel.checks import _CHECKS, _VACUOUS
from kreinrel.errors import PreconditionError, ValidationError


def test_registry_is_complete_and_consistent():
    assert set(THEOREM_IDS) == set(_CHECKS)
    assert set(THEOREM_IDS) == set(_VACUOUS)
    assert len(THEOREM_IDS) == len(set(THEOREM_IDS))


def test_unknown_id_is_rejected():
    with pytest.raises(ValidationError):
        check_theorem("no_such_property", trials=1)


def test_invalid_dims_rejected():
    with pytest.raises(ValidationError):
        check_theorem(THEOREM_IDS[0], trials=1, dims=(3, 2))
    with pytest.raises(ValidationError):
        check_theorem(THEOREM_IDS[0], trials=1, dims=(0, 2))


def test_every_check_passes_a_smoke_run():
    for tid in THEOREM_IDS:
        rep = check_theorem(tid, trials=3, dims=(1, 4), seed=7)
        assert rep.passed, (tid, rep)
        assert rep.trials == 3
        assert rep.vacuous_clauses  # every finite-dim reading is ledgered


def test_report_json_is_deterministic():
    r1 = check_theorem("pop_lemma", trials=5, seed=3).to_json()
    r2 = check_theorem("pop_lemma", trials=5, seed=3).to_json()
    assert r1 == r2
    assert r1.encode() == r2.encode()


def test_report_depends_on_seed_stream_not_call_order():
    a = check_theorem("derk_lemma", trials=4, seed=11)
    check_theorem("torth", trials=4, seed=5)
    b = check_theorem("derk_lemma", trials=4, seed=11)
    assert a == b


def test_report_passed_property():
    rep = CheckReport(theorem_id="x", trials=2, failures=1,
                      worst_residual=0.5, vacuous_clauses=(), seed=0)
    assert not rep.passed
    assert '"failures": 1' in rep.to_json()


# ------------------------------------------------------------- sweeps

def test_weyl_sweep_rejects_real_grid_points():
    with pytest.raises(PreconditionError):
        weyl_sweep(identity_obt(), [1j, 0.5])


def test_weyl_sweep_identity_pair_rows():
    pts = [complex(a, b)
           for a in np.linspace(-2, 2, 5)
           for b in (1.0, -1.0, 2.0, -2.0, 0.5)]
    csv = weyl_sweep(identity_obt(), pts, eps=0.25)
    lines = csv.strip().split("\n")
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == 1 + len(pts)
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == len(SWEEP_COLUMNS)
        # M(z) = z: a 1x1 operator everywhere off the real axis
        assert cells[2] == "1"   # dim_M
        assert cells[3] == "0"   # dim_mul
        assert cells[5] == "1"   # is_operator
        assert cells[6] == "1"   # M(z) + z = 2z invertible
        assert cells[7] == "1"   # z nonreal is in the resolvent


def test_weyl_sweep_writes_to_stream():
    buf = io.StringIO()
    assert weyl_sweep(identity_obt(), [1j, -1j], out=buf) is None
    assert buf.getvalue().startswith(",".join(SWEEP_COLUMNS))
