import math

import numpy as np
import pytest

from moeadld.engine import (
    AlgoConfig,
    IdealNadir,
    Individual,
    NonFiniteObjectiveError,
    RunRecord,
    associate,
    compare,
    compare_constrained,
    dominates,
    elitist_selection,
    levels,
    normalize,
    partition,
    pbi,
    run,
    update_ideal_nadir,
)
from moeadld.problems import get_problem
from moeadld.problems.base import Problem
from moeadld.weights import generate_simplex_lattice

ORIGIN2 = IdealNadir(np.zeros(2), np.ones(2))


def ind(f, cv=0.0):
    return Individual(np.zeros(1), np.asarray(f, dtype=float), cv)


# pbi

def test_pbi_hand_value():
    assert pbi(np.array([1.0, 1.0]), np.array([1.0, 0.0]), ORIGIN2, 5.0) == pytest.approx(6.0)


def test_pbi_parallel_is_norm():
    f = np.array([0.6, 1.2, 0.3])
    w = f / f.sum()
    origin = IdealNadir(np.zeros(3), np.ones(3))
    assert pbi(f, w, origin, 5.0) == pytest.approx(np.linalg.norm(f), abs=1e-12)


def test_pbi_theta_zero_is_d1():
    f = np.array([2.0, 1.0])
    w = np.array([0.5, 0.5])
    assert pbi(f, w, ORIGIN2, 0.0) == pytest.approx(3 / math.sqrt(2))


def test_pbi_translates_by_ideal():
    zn = IdealNadir(np.array([1.0, 1.0]), np.array([3.0, 3.0]))
    assert pbi(np.array([2.0, 2.0]), np.array([1.0, 0.0]), zn, 5.0) == pytest.approx(6.0)


def test_pbi_scaled_uses_normalized_objectives():
    zn = IdealNadir(np.array([0.0, 0.0]), np.array([2.0, 4.0]))
    # normalized (1, 1) against w = (1, 0)
    assert pbi(np.array([2.0, 4.0]), np.array([1.0, 0.0]), zn, 5.0, scaled=True) == pytest.approx(6.0)


def test_pbi_batch_matches_scalar(rng):
    f = rng.random((20, 3))
    w = generate_simplex_lattice(3, 4)[rng.integers(0, 15, 20)]
    zn = IdealNadir(np.zeros(3), np.ones(3))
    batch = pbi(f, w, zn)
    assert np.allclose(batch, [pbi(a, b, zn) for a, b in zip(f, w)], rtol=0, atol=1e-14)


# dominance and comparison

def test_dominates_examples():
    assert dominates((1, 1), (2, 2))
    assert not dominates((1, 2), (2, 1)) and not dominates((2, 1), (1, 2))
    assert not dominates((1, 1), (1, 1))
    assert dominates((1, 1), (1, 2))


def test_compare_dominance_ignores_pbi():
    w = np.array([1.0, 0.0])
    # (0.9, 0.9) has a larger PBI than (1, 0) on w but dominates (1, 1)
    x, y = ind([0.9, 0.9]), ind([1.0, 1.0])
    assert compare(x, y, w, ORIGIN2)
    assert not compare(y, x, w, ORIGIN2)


def test_compare_nondominated_uses_pbi():
    w = np.array([0.5, 0.5])
    x, y = ind([0.5, 0.6]), ind([0.2, 1.2])
    assert pbi(x.f, w, ORIGIN2) < pbi(y.f, w, ORIGIN2)
    assert compare(x, y, w, ORIGIN2)
    assert not compare(y, x, w, ORIGIN2)


def test_compare_equal_vectors_false_both_ways():
    w = np.array([0.5, 0.5])
    x, y = ind([0.3, 0.7]), ind([0.3, 0.7])
    assert not compare(x, y, w, ORIGIN2) and not compare(y, x, w, ORIGIN2)


def test_compare_constrained_feasibility():
    w = np.array([0.5, 0.5])
    feas, infeas = ind([5.0, 5.0], 0.0), ind([0.1, 0.1], 0.3)
    assert compare_constrained(feas, infeas, w, ORIGIN2)
    assert not compare_constrained(infeas, feas, w, ORIGIN2)


def test_compare_constrained_both_infeasible():
    w = np.array([0.5, 0.5])
    other = ind([0.2, 1.2], 0.2)
    better_pbi = ind([0.5, 0.6], 0.1)
    worse_pbi = ind([1.5, 0.0], 0.1)
    assert pbi(better_pbi.f, w, ORIGIN2) < pbi(other.f, w, ORIGIN2) < pbi(worse_pbi.f, w, ORIGIN2)
    assert compare_constrained(better_pbi, other, w, ORIGIN2)
    assert not compare_constrained(worse_pbi, other, w, ORIGIN2)
    # lower violation alone is not enough: the unconstrained comparison must also hold
    assert not compare_constrained(ind(other.f, 0.1), ind(better_pbi.f, 0.2), w, ORIGIN2)


def test_compare_constrained_both_feasible_is_compare():
    w = np.array([0.5, 0.5])
    x, y = ind([0.5, 0.6]), ind([0.2, 1.2])
    assert compare_constrained(x, y, w, ORIGIN2) == compare(x, y, w, ORIGIN2)


# association

def _acos_oracle(f, weights):
    angles = [
        math.acos(max(-1.0, min(1.0, float(f @ w) / (np.linalg.norm(f) * np.linalg.norm(w)))))
        for w in weights
    ]
    return int(np.argmin(angles))


def test_associate_two_objective_example():
    w = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])
    f = np.array([1.0, 0.9])
    assert associate(f, w, ORIGIN2) == 1 == _acos_oracle(f, w)


def test_associate_parallel_and_edges():
    w = generate_simplex_lattice(3, 4)
    zn = IdealNadir(np.zeros(3), np.ones(3))
    for i, wi in enumerate(w):
        assert associate(3.0 * wi, w, zn) == i
    w2 = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])
    assert associate(np.array([1e-9, 0.0]), w2, ORIGIN2) == 0
    assert associate(np.zeros(2), w2, ORIGIN2) == 0


def test_associate_matches_acos_oracle(rng):
    w = generate_simplex_lattice(3, 12)
    zn = IdealNadir(np.zeros(3), np.ones(3))
    f = rng.random((200, 3))
    got = associate(f, w, zn)
    assert all(got[i] == _acos_oracle(f[i], w) for i in range(len(f)))


# normalization and ideal/nadir

def test_normalize_examples():
    zn = IdealNadir(np.array([1.0, 0.0]), np.array([5.0, 2.0]))
    np.testing.assert_allclose(normalize(zn.ideal, zn), [0, 0])
    np.testing.assert_allclose(normalize(zn.nadir, zn), [1, 1])
    assert normalize(np.array([3.0, 0.0]), zn)[0] == pytest.approx(0.5)


def test_normalize_degenerate_span_uses_one():
    zn = IdealNadir(np.array([2.0, 0.0]), np.array([2.0, 4.0]))
    np.testing.assert_allclose(normalize(np.array([3.0, 2.0]), zn), [1.0, 0.5])


def test_update_ideal_nadir_examples():
    zn = IdealNadir(np.zeros(2), np.ones(2))
    same = update_ideal_nadir(zn, np.zeros(2))
    np.testing.assert_array_equal(same.ideal, zn.ideal)
    np.testing.assert_array_equal(same.nadir, zn.nadir)
    new = update_ideal_nadir(zn, np.array([[-1.0, 2.0]]))
    np.testing.assert_array_equal(new.ideal, [-1, 0])
    np.testing.assert_array_equal(new.nadir, [1, 2])
    again = update_ideal_nadir(new, np.array([[-1.0, 2.0]]))
    np.testing.assert_array_equal(again.ideal, new.ideal)
    np.testing.assert_array_equal(again.nadir, new.nadir)


# partition and selection

def test_partition_distinct_weights():
    w = generate_simplex_lattice(2, 4)
    zn = IdealNadir(np.zeros(2), np.ones(2))
    pop = [ind(2.0 * wi) for wi in w] + [ind(1.0 * wi) for wi in w]
    subpops = partition(pop, w, zn)
    assert sum(len(sp) for sp in subpops) == 2 * len(w)
    for i, sp in enumerate(subpops):
        assert len(sp) == 2
        assert all(m.assoc == i for m in sp)
        # the closer copy dominates the farther one
        np.testing.assert_allclose(sp[0].f, w[i])


def test_partition_single_weight_antichain_is_pbi_sorted(rng):
    w = np.array([[0.5, 0.5]])
    t = rng.random(40)
    pop = [ind([a, 1.0 - a]) for a in t]
    (sp,) = partition(pop, w, ORIGIN2)
    assert len(sp) == 40
    values = [m.pbi for m in sp]
    assert values == sorted(values)
    for i in range(len(sp)):
        for j in range(i + 1, len(sp)):
            assert not compare(sp[j], sp[i], w[0], ORIGIN2)


def test_partition_single_weight_general_never_dominated_by_later(rng):
    w = np.array([[0.3, 0.3, 0.4]])
    zn = IdealNadir(np.zeros(3), np.ones(3))
    for _ in range(20):
        pop = [ind(f) for f in rng.integers(0, 4, (30, 3)).astype(float) + 0.5]
        (sp,) = partition(pop, w, zn)
        assert len(sp) == 30
        for i in range(len(sp)):
            for j in range(i + 1, len(sp)):
                assert not dominates(sp[j].f, sp[i].f)


def test_partition_dominating_insert_precedes_dominated():
    w = np.array([[0.5, 0.5]])
    pop = [ind([0.2, 1.2]), ind([0.9, 0.9]), ind([1.0, 1.5]), ind([0.1, 0.8])]
    (sp,) = partition(pop, w, ORIGIN2)
    order = [tuple(m.f) for m in sp]
    newcomer = order.index((0.1, 0.8))
    for k, m in enumerate(sp):
        if dominates((0.1, 0.8), m.f):
            assert newcomer < k


def _synthetic(sizes):
    return [[ind([float(i), float(j)]) for j in range(n)] for i, n in enumerate(sizes)]


def test_levels_shape():
    lv = levels(_synthetic([2, 0, 3, 1]))
    assert [len(level) for level in lv] == [3, 2, 1]


def test_selection_all_pairs_takes_heads(rng):
    subpops = _synthetic([2] * 10)
    out = elitist_selection(subpops, 10, rng)
    assert out == [sp[0] for sp in subpops]


def test_selection_partial_level(rng):
    n = 10
    # level 1 has N - 3 members, level 2 has more than 3
    sizes = [4, 4, 3, 3, 2, 2, 2, 0, 0, 0]
    assert sum(sizes) == 2 * n
    subpops = _synthetic(sizes)
    lv = levels(subpops)
    assert len(lv[0]) == n - 3
    out = elitist_selection(subpops, n, rng)
    assert len(out) == n
    assert out[: n - 3] == lv[0]
    assert all(any(o is m for m in lv[1]) for o in out[n - 3 :])
    assert len({id(o) for o in out}) == n


def test_selection_single_subpopulation(rng):
    n = 6
    subpops = [[ind([float(j), 0.0]) for j in range(2 * n)]] + [[] for _ in range(n - 1)]
    out = elitist_selection(subpops, n, rng)
    assert out == subpops[0][:n]


# run

class _Broken(Problem):
    name = "broken"

    def __init__(self):
        super().__init__(2, 3, np.zeros(3), np.ones(3))

    def _objectives(self, x):
        f = np.stack([x[:, 0], 1.0 - x[:, 0]], axis=1)
        f[x[:, 1] > 0.5, 0] = np.nan
        return f


def test_run_zero_generations_returns_initial_population():
    problem = get_problem("DTLZ2", 3)
    w = generate_simplex_lattice(3, 12)
    res = run(problem, w, AlgoConfig(generations=0, seed=4))
    assert len(res.population) == 91
    expected = problem.sample(np.random.default_rng(4), 91)
    np.testing.assert_array_equal(res.record.x, expected)
    assert res.record.ideal_history.shape == (1, 3)


def test_run_is_deterministic():
    problem = get_problem("DTLZ2", 3)
    w = generate_simplex_lattice(3, 6)
    a = run(problem, w, AlgoConfig(generations=15, seed=9)).record
    b = run(problem, w, AlgoConfig(generations=15, seed=9)).record
    c = run(problem, w, AlgoConfig(generations=15, seed=10)).record
    assert a.same_outcome(b)
    assert not a.same_outcome(c)


def test_run_history_monotone_and_population_size():
    problem = get_problem("DTLZ1", 3)
    w = generate_simplex_lattice(3, 6)
    sizes = []
    rec = run(problem, w, AlgoConfig(generations=10, seed=1),
              on_generation=lambda g, zn: sizes.append(g)).record
    assert sizes == list(range(1, 11))
    assert rec.f.shape == (28, 3)
    assert np.all(np.diff(rec.ideal_history, axis=0) <= 0)
    assert np.all(np.diff(rec.nadir_history, axis=0) >= 0)


def test_run_aborts_on_non_finite():
    w = generate_simplex_lattice(2, 9)
    with pytest.raises(NonFiniteObjectiveError):
        run(_Broken(), w, AlgoConfig(generations=5, seed=0))


def test_run_rejects_mismatched_weights():
    with pytest.raises(ValueError):
        run(get_problem("DTLZ2", 3), generate_simplex_lattice(2, 5), AlgoConfig(generations=1))


@pytest.mark.parametrize("name", ["DTLZ2", "C1-DTLZ1", "WFG4"])
def test_run_debug_sweep(name):
    problem = get_problem(name, 3)
    w = generate_simplex_lattice(3, 5)
    res = run(problem, w, AlgoConfig(generations=10, seed=2, debug=True))
    assert len(res.population) == len(w)


def test_resolve_defaults():
    assert AlgoConfig().resolve(get_problem("WFG1", 3)).normalize is True
    assert AlgoConfig().resolve(get_problem("DTLZ1", 3)).normalize is False
    assert AlgoConfig().resolve(get_problem("C2-DTLZ2", 3)).constrained is True
    assert AlgoConfig(normalize=True).resolve(get_problem("DTLZ1", 3)).normalize is True


def test_run_record_json_round_trip(tmp_path):
    problem = get_problem("C2-DTLZ2", 3)
    rec = run(problem, generate_simplex_lattice(3, 4), AlgoConfig(generations=3, seed=5)).record
    rec.indicators = {"igd": 0.125}
    path = tmp_path / "rec.json"
    rec.save(path)
    back = RunRecord.load(path)
    assert back.same_outcome(rec)
    assert back.wall_time == rec.wall_time
    assert AlgoConfig.from_dict(back.config) == AlgoConfig.from_dict(rec.config)
