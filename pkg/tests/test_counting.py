import pytest

from polyrect import (
    Polynomial,
    RowConfig,
    accepts,
    brute_force_area_histogram,
    brute_force_count,
    count_area_series,
    count_series,
    sample_accepted_stacks,
)
from polyrect.rowconfig import enumerate_alphabet


def rows(*texts):
    return [RowConfig.from_string(t) for t in texts]


def test_counts_start_with_convention(automaton):
    table = count_series(automaton(2), 0)
    assert table.counts == (1,)


def test_width_two_series_frozen(automaton):
    table = count_series(automaton(2), 5)
    assert table.counts == (1, 1, 5, 15, 39, 97)
    table.validate()


def test_width_one_series(automaton):
    assert count_series(automaton(1), 4).counts == (1, 1, 1, 1, 1)


def test_series_matches_oracle(automaton):
    for width in (1, 2, 3, 4):
        table = count_area_series(automaton(width), 4)
        table.validate()
        for h in range(1, 5):
            assert table.counts[h] == brute_force_count(width, h), (width, h)
            poly = table.area_counts[h]
            hist = {n: c for n, c in enumerate(poly.coeffs) if c}
            assert hist == brute_force_area_histogram(width, h), (width, h)


def test_area_polynomials_frozen(automaton):
    table = count_area_series(automaton(2), 3)
    assert table.area_counts[0] == 1
    assert table.area_counts[1] == Polynomial((0, 0, 1))
    assert table.area_counts[2] == Polynomial((0, 0, 0, 4, 1))
    assert table.area_counts[3] == Polynomial((0, 0, 0, 0, 8, 6, 1))


def test_area_collapses_to_counts(automaton):
    table = count_area_series(automaton(3), 8)
    plain = count_series(automaton(3), 8)
    assert plain.counts == table.counts
    for h in range(9):
        assert table.area_counts[h].evaluate(1) == plain.counts[h]


def test_uncollapsed_reference_dp(automaton):
    # same DP letter by letter, no multiplicity collapsing
    for width in (1, 2, 3):
        a = automaton(width)
        alphabet = enumerate_alphabet(width)
        v = [0] * a.n_states
        v[0] = 1
        counts = [1]
        for _ in range(5):
            w = [0] * a.n_states
            for s, weight in enumerate(v):
                if not weight:
                    continue
                for row in alphabet:
                    t = a.transitions[s][row.bits - 1]
                    if t >= 0:
                        w[t] += weight
            v = w
            counts.append(sum(v[i] for i in a.accepting))
        assert tuple(counts) == count_series(a, 5).counts


def test_transpose_symmetry(automaton):
    for b in range(1, 5):
        for h in range(1, 5):
            assert (
                count_series(automaton(b), h).counts[h]
                == count_series(automaton(h), b).counts[b]
            ), (b, h)


def test_monotone_growth_regression(automaton):
    for width in (2, 3, 4):
        counts = count_series(automaton(width), 8).counts
        for h in range(2, 8):
            assert counts[h + 1] >= counts[h]


def test_accepts_basic(automaton):
    a2 = automaton(2)
    assert accepts(a2, rows("11"))
    assert not accepts(a2, rows("01", "10"))
    assert not accepts(a2, rows("01"))
    assert not accepts(a2, [])
    with pytest.raises(ValueError):
        accepts(a2, rows("111"))


def test_accepts_agrees_with_oracle_membership(automaton):
    a = automaton(3)
    stacks = sample_accepted_stacks(3, 3, 200)
    assert len(stacks) == brute_force_count(3, 3)
    for stack in stacks:
        assert accepts(a, stack)


def test_mirror_symmetry(automaton):
    # left-right reflection of an accepted stack is accepted
    a = automaton(3)
    for stack in sample_accepted_stacks(3, 3, 60):
        mirrored = [RowConfig.from_string(str(r)[::-1]) for r in stack]
        assert accepts(a, mirrored)


def test_rejects_non_polyomino_stacks(automaton):
    a = automaton(2)
    total = sum(1 for bits1 in range(1, 4) for bits2 in range(1, 4)
                if accepts(a, [RowConfig(2, bits1), RowConfig(2, bits2)]))
    assert total == brute_force_count(2, 2)


def test_h_max_validation(automaton):
    with pytest.raises(ValueError):
        count_series(automaton(2), -1)
    with pytest.raises(ValueError):
        count_area_series(automaton(2), -1)
