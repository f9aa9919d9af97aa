import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rustcast.data import (
    Example,
    apply_norm,
    class_stats,
    fit_norm_stats,
    random_split,
    region_split,
)
from rustcast.errors import EmptyDataset, EmptyTrainingSet, ValidationError


def _ex(values, y=0, region="R", i=0):
    x = np.asarray(values, dtype=float).reshape(-1, 1) * np.ones((12, 1))
    return Example(x=x, y=y, k=0, region_id=region, anchor=(2000, 1 + i % 12))


def _examples(n, regions=1):
    return [Example(np.full((12, 2), float(i)), i % 2, 0, f"R{i % regions}", (2000 + i, 1))
            for i in range(n)]


def test_norm_hand_example():
    train = [_ex([1.0]), _ex([3.0])]
    stats = fit_norm_stats(train)
    assert stats.mean[0] == 2.0 and stats.std[0] == 1.0
    out = apply_norm(stats, train)
    np.testing.assert_array_equal(out[0].x, -1.0)
    np.testing.assert_array_equal(out[1].x, 1.0)
    val = apply_norm(stats, [_ex([2.0])])
    np.testing.assert_array_equal(val[0].x, 0.0)


def test_constant_feature_clamps():
    stats = fit_norm_stats([_ex([5.0]), _ex([5.0])])
    assert stats.std[0] == 1e-8
    np.testing.assert_array_equal(apply_norm(stats, [_ex([5.0])])[0].x, 0.0)


def test_norm_empty():
    with pytest.raises(EmptyTrainingSet):
        fit_norm_stats([])


def test_norm_ignores_validation():
    ex = _examples(30)
    split = random_split(ex, 0.2, 4)
    a = fit_norm_stats(split.train)
    shuffled = [split.val[i] for i in np.random.default_rng(0).permutation(len(split.val))]
    split.val = shuffled
    b = fit_norm_stats(split.train)
    assert a.mean.tobytes() == b.mean.tobytes() and a.std.tobytes() == b.std.tobytes()


def test_split_sizes_and_determinism():
    ex = _examples(10)
    a = random_split(ex, 0.2, 42)
    b = random_split(ex, 0.2, 42)
    assert (len(a.train), len(a.val)) == (8, 2)
    assert [e.anchor for e in a.val] == [e.anchor for e in b.val]
    small = random_split(_examples(5), 0.2, 1)
    assert (len(small.train), len(small.val)) == (4, 1)


def test_different_seeds_differ():
    # verified once: seeds 0 and 1 give different validation sets on 100 examples
    ex = _examples(100)
    a = {e.anchor for e in random_split(ex, 0.2, 0).val}
    b = {e.anchor for e in random_split(ex, 0.2, 1).val}
    assert a != b


@given(st.integers(1, 200), st.floats(0.01, 0.99), st.integers(0, 2**32 - 1))
def test_split_partition(n, frac, seed):
    ex = _examples(n)
    s = random_split(ex, frac, seed)
    ids_train = {id(e) for e in s.train}
    ids_val = {id(e) for e in s.val}
    assert not ids_train & ids_val
    assert ids_train | ids_val == {id(e) for e in ex}
    assert abs(len(s.val) - frac * n) <= 1


def test_split_errors():
    with pytest.raises(EmptyDataset):
        random_split([], 0.2, 0)
    with pytest.raises(ValidationError):
        random_split(_examples(3), 1.0, 0)
    with pytest.raises(ValidationError):
        random_split(_examples(3), 0.0, 0)


def test_region_split_keeps_regions_whole():
    ex = _examples(60, regions=6)
    s = region_split(ex, 0.2, 3)
    assert s.mode == "region"
    assert not {e.region_id for e in s.train} & {e.region_id for e in s.val}
    assert len({e.region_id for e in s.val}) == 1
    assert len(s.train) + len(s.val) == 60


def test_class_stats():
    cs = class_stats([_ex([0], y) for y in (0, 0, 0, 1)])
    assert (cs.n_total, cs.n_positive) == (4, 1)
    assert cs.prevalence == 0.25 and cs.majority_accuracy == 0.75
    cs = class_stats([_ex([0], 0) for _ in range(3)])
    assert cs.prevalence == 0.0 and cs.majority_accuracy == 1.0
    cs = class_stats([])
    assert cs.n_total == 0 and not cs.prevalence_defined
