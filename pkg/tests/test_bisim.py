"""Greatest (pre)simulations and (pre)bisimulations of all seven kinds."""

import itertools
from fractions import Fraction

import pytest

from conftest import grid, random_pair
from fuzzykripke.algebra import Algebra
from fuzzykripke.bisim import (
    SimType,
    check_conditions,
    exists_bisim,
    greatest_pre,
    iteration_cap,
)
from fuzzykripke.fixtures import load_pair
from fuzzykripke.fuzzrel import FuzzyMat

ALL_TYPES = [SimType(t) for t in ("fs", "bs", "fb", "bb", "fbb", "bfb", "rb")]
BISIM_TYPES = [SimType(t) for t in ("fb", "bb", "fbb", "bfb", "rb")]

# reversing both models swaps each kind with its mirror image
DUAL_TYPE = {
    "fs": "bs",
    "bs": "fs",
    "fb": "bb",
    "bb": "fb",
    "fbb": "bfb",
    "bfb": "fbb",
    "rb": "rb",
}


# -- frozen greatest relations on the showcase pair ------------------------------

SHOWCASE_EXPECTED = {
    "fs": ([["0.9", "0.3", "0.2"], ["1", "1", "0.2"], ["0.9", "0.3", "1"]], 2),
    "bs": ([["0.9", "0.4", "0.2"], ["1", "0.8", "0.2"], ["1", "0.8", "1"]], 2),
    "fb": ([["0.8", "0.3", "0.2"], ["0.3", "1", "0.2"], ["0.2", "0.2", "0.8"]], 3),
    "bb": ([["0.9", "0.4", "0.2"], ["0.4", "0.8", "0.2"], ["0.2", "0.2", "0.9"]], 2),
    "fbb": ([["0.8", "0.3", "0.2"], ["0.4", "1", "0.2"], ["0.2", "0.2", "0.8"]], 3),
    "bfb": ([["0.9", "0.4", "0.2"], ["0.3", "0.8", "0.2"], ["0.2", "0.2", "0.9"]], 2),
    "rb": ([["0.8", "0.3", "0.2"], ["0.3", "0.8", "0.2"], ["0.2", "0.2", "0.8"]], 3),
}


def test_showcase_greatest_relations_are_frozen():
    a, b = load_pair("sim_showcase")
    for sim_type in ALL_TYPES:
        rep = greatest_pre(a, b, sim_type)
        want_matrix, want_iters = SHOWCASE_EXPECTED[sim_type.value]
        assert grid(rep.matrix) == want_matrix, sim_type.value
        assert rep.iterations == want_iters
        assert rep.exists and rep.nonempty and rep.satisfies_condition1
        assert rep.row_worlds == a.worlds and rep.col_worlds == b.worlds


def test_showcase_report_serialization():
    a, b = load_pair("sim_showcase")
    doc = greatest_pre(a, b, SimType("fs")).to_dict()
    assert doc["type"] == "fs"
    assert doc["matrix"] == SHOWCASE_EXPECTED["fs"][0]
    assert doc["exists"] is True
    assert all(c["holds"] for c in doc["conditions"])


# -- existence patterns on the other bundled pairs --------------------------------


def test_backward_only_pair_existence():
    a, b = load_pair("backward_only")
    outcomes = {t.value: exists_bisim(a, b, t) for t in BISIM_TYPES}
    assert {t: flag for t, (flag, _) in outcomes.items()} == {
        "fb": False,
        "bb": True,
        "fbb": True,
        "bfb": False,
        "rb": False,
    }
    bb_matrix = [["1", "0.3"], ["0.3", "1"], ["1", "0.3"]]
    assert grid(outcomes["bb"][1].matrix) == bb_matrix
    assert grid(outcomes["fbb"][1].matrix) == bb_matrix
    # the failed kinds collapse to a constant matrix below every threshold
    assert grid(outcomes["rb"][1].matrix) == [["0.3", "0.3"]] * 3


def test_backward_only_pair_flips_under_reversal():
    a, b = load_pair("backward_only")
    ra, rb_model = a.reverse(), b.reverse()
    flags = {t.value: exists_bisim(ra, rb_model, t)[0] for t in BISIM_TYPES}
    assert flags == {"fb": True, "bb": False, "fbb": False, "bfb": True, "rb": False}
    rep = greatest_pre(ra, rb_model, SimType("fb"))
    assert grid(rep.matrix) == [["1", "0.3"], ["0.3", "1"], ["1", "0.3"]]


def test_fully_equivalent_pair_existence():
    a, b = load_pair("fully_equivalent")
    for t in BISIM_TYPES:
        flag, rep = exists_bisim(a, b, t)
        assert flag, t.value
    assert grid(greatest_pre(a, b, SimType("rb")).matrix) == [
        ["1", "0.2"],
        ["0.2", "1"],
        ["1", "0.2"],
    ]


def test_crisp_pair_kinds_coincide():
    a, b = load_pair("crisp_pair")
    want = [["1", "0"], ["0", "1"], ["0", "1"], ["1", "0"]]
    for t in BISIM_TYPES:
        rep = greatest_pre(a, b, t)
        assert rep.exists and grid(rep.matrix) == want and rep.iterations == 1


# -- structural properties ----------------------------------------------------------


def test_reversal_duality_on_fixtures():
    for name in ("sim_showcase", "backward_only", "fully_equivalent", "crisp_pair"):
        a, b = load_pair(name)
        ra, rb_model = a.reverse(), b.reverse()
        for t in ALL_TYPES:
            if name != "sim_showcase" and t.value in ("fs", "bs"):
                continue
            mirrored = greatest_pre(ra, rb_model, SimType(DUAL_TYPE[t.value]))
            assert mirrored.matrix.rows == greatest_pre(a, b, t).matrix.rows


def test_reversal_duality_on_random_pairs(rng):
    for algebra in (Algebra.boolean(), Algebra.chain(3), Algebra.godel()):
        for _ in range(25):
            a, b = random_pair(rng, algebra)
            ra, rb_model = a.reverse(), b.reverse()
            for t in ALL_TYPES:
                mirrored = greatest_pre(ra, rb_model, SimType(DUAL_TYPE[t.value]))
                assert mirrored.matrix.rows == greatest_pre(a, b, t).matrix.rows


def test_greatest_matrix_satisfies_its_conditions(rng):
    for _ in range(40):
        a, b = random_pair(rng, Algebra.godel())
        for t in ALL_TYPES:
            rep = greatest_pre(a, b, t)
            cond1 = [c.holds for c in rep.conditions if "-1[" in c.name]
            assert rep.satisfies_condition1 == all(cond1)
            for check in rep.conditions:
                if "-1[" not in check.name:
                    assert check.holds, (t.value, check.name)


def test_check_conditions_reports_first_violation():
    a, b = load_pair("sim_showcase")
    ones = FuzzyMat.ones(a.algebra, (len(a.worlds), len(b.worlds)))
    checks = check_conditions(a, b, ones, SimType("rb"))
    failed = [c for c in checks if not c.holds]
    assert failed, "the all-ones relation cannot satisfy every condition"
    v = failed[0].violation
    assert v is not None and {"pair", "lhs", "rhs"} <= set(v)
    from fuzzykripke.algebra import parse_value

    assert parse_value(v["lhs"]) > parse_value(v["rhs"])


def test_greatest_is_an_upper_bound_exhaustively():
    # chain(2), tiny models: every candidate satisfying the -2/-3 conditions
    # lies below the computed greatest matrix, which itself satisfies them
    alg = Algebra.boolean()
    carrier = alg.carrier()
    from conftest import random_model
    import random as _random

    rng = _random.Random(4242)
    for _ in range(10):
        a = random_model(rng, alg, 2)
        b = random_model(rng, alg, 2)
        for t in ALL_TYPES:
            top = greatest_pre(a, b, t).matrix
            for combo in itertools.product(carrier, repeat=4):
                phi = FuzzyMat(alg, [combo[:2], combo[2:]])
                ok = all(
                    c.holds
                    for c in check_conditions(a, b, phi, t)
                    if "-1[" not in c.name
                )
                if ok:
                    assert phi.leq(top), (t.value, phi.rows)


def test_self_comparison_contains_identity(rng):
    for _ in range(30):
        from conftest import random_model

        m = random_model(rng, Algebra.godel(), rng.randint(1, 3))
        rep = greatest_pre(m, m, SimType("rb"))
        assert rep.exists
        for i in range(len(m.worlds)):
            assert rep.matrix.rows[i][i] == Fraction(1)


def test_iteration_counts_respect_cap():
    a, b = load_pair("sim_showcase")
    cap = iteration_cap(a, b)
    assert cap >= 1
    for t in ALL_TYPES:
        assert greatest_pre(a, b, t).iterations <= cap
    with pytest.raises(RuntimeError):
        greatest_pre(a, b, SimType("rb"), max_iterations=0)


def test_incomparable_models_are_rejected():
    a, _ = load_pair("sim_showcase")
    c, _ = load_pair("crisp_pair")
    with pytest.raises(Exception):
        greatest_pre(a, c, SimType("fs"))
