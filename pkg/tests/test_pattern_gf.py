"""Pattern-marked generating-function systems against the enumeration oracle."""

import math
from fractions import Fraction

import pytest

from dstarlab.pattern_gf import (
    PatternError,
    PatternSpec,
    moment_sums,
    occurrence_distribution,
    solve_pattern,
    verify_solution,
    SystemSolution,
)
from dstarlab.pseries import SeriesError, free_series
from dstarlab.treelab import pattern_histograms

FROZEN = {
    ((1, 2), 2): {0: 1},
    ((1, 2), 4): {0: 1, 2: 1},
    ((1, 2), 5): {0: 1, 1: 1, 2: 1},
    ((1, 3), 4): {0: 1, 3: 1},
    ((2, 2), 4): {0: 1, 1: 1},
    ((2, 2), 5): {0: 2, 2: 1},
    ((2, 3), 5): {0: 2, 1: 1},
}


def test_pattern_spec_parsing():
    assert PatternSpec.of("2,3") == PatternSpec.of((2, 3)) == PatternSpec.of((3, 2))
    assert PatternSpec.of((3, 1)).case == 2
    assert PatternSpec.of((4, 4)).case == 3
    assert PatternSpec.of((2, 5)).case == 1
    with pytest.raises(PatternError):
        PatternSpec.of((1, 1))
    with pytest.raises(PatternError):
        PatternSpec.of((0, 2))
    with pytest.raises(PatternError):
        PatternSpec.of("nope")


def test_frozen_distributions():
    for (pat, n), want in FROZEN.items():
        assert occurrence_distribution(pat, n) == want


def test_row_sums_are_tree_counts():
    t = free_series(14)
    for pat in ((1, 2), (2, 2), (2, 3)):
        sol = solve_pattern(pat, 14, check=False)
        for n in range(1, 15):
            dist = occurrence_distribution(pat, n, solution=sol)
            assert sum(dist.values()) == t[n]


@pytest.mark.parametrize("pat", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (2, 4)])
def test_distributions_match_enumeration(pat):
    # one representative per case plus two larger ones; the full 20-pattern
    # sweep to n = 14 runs in the acceptance gate
    n_max = 12
    oracle = pattern_histograms(n_max, [pat])[pat]
    sol = solve_pattern(pat, n_max, check=False)
    for n in range(1, n_max + 1):
        assert occurrence_distribution(pat, n, solution=sol) == oracle[n]


def test_moment_examples():
    s = moment_sums((1, 2), 4, 1)
    assert s[0] == 2 and s[1] / s[0] == 1
    s = moment_sums((2, 2), 5, 2)
    assert s[1] / s[0] == Fraction(2, 3)


def test_moments_match_distribution():
    for pat in ((1, 2), (2, 3)):
        sol = solve_pattern(pat, 12, check=False)
        for n in (6, 9, 12):
            dist = occurrence_distribution(pat, n, solution=sol)
            sums = moment_sums(pat, n, 3)
            for m in range(4):
                want = sum(c * math.comb(k, m) for k, c in dist.items())
                assert sums[m] == want


def test_jet_track_equals_bivariate_track():
    for pat in ((1, 2), (2, 2), (2, 3)):
        jet = solve_pattern(pat, 40, jets=4, check=False)
        biv = solve_pattern(pat, 40, check=False)
        for n in (10, 25, 40):
            assert moment_sums(pat, n, 3, solution=jet) == moment_sums(pat, n, 3, solution=biv)


def test_u1_collapse_is_free_series():
    t = free_series(60)
    for pat in ((1, 2), (2, 2), (2, 3)):  # one system per case
        sol = solve_pattern(pat, 60, jets=1, check=False)
        assert sol.t.jet_component(0) == t.truncate(60)
        # the repaired-root series collapses to the plain rooted series
        assert sol.r.jet_component(0) == sol.p.jet_component(0)


def test_literal_variant_diverges_in_case1():
    # the two circulating forms of the case-1 root repair disagree; the
    # enumeration oracle picks out "std" ((2,3), n=5 has the 5-spider at one
    # occurrence, which "literal" misses)
    assert occurrence_distribution((2, 3), 5, variant="literal") == {0: 3}
    assert occurrence_distribution((2, 3), 5, variant="std") == {0: 2, 1: 1}


def test_literal_variant_downgrades_outside_case1():
    sol = solve_pattern((2, 2), 8, variant="literal", check=False)
    assert sol.variant == "std"


def _bump(series):
    from dstarlab.pseries import Series

    c = list(series.c)
    c[3] = series.ring.add(c[3], series.ring.one)
    return Series(series.ring, c)


def test_verify_solution_passes_and_detects_tampering():
    sol = solve_pattern((2, 3), 20, check=False)
    verify_solution(sol)
    bad = SystemSolution(
        sol.pattern, sol.order, sol.variant,
        sol.p, sol.a0, sol.ai, sol.aj, sol.r, _bump(sol.t),
    )
    with pytest.raises(SeriesError):
        verify_solution(bad)


def test_occurrence_distribution_guards():
    sol = solve_pattern((1, 2), 10, check=False)
    with pytest.raises(PatternError):
        occurrence_distribution((1, 2), 11, solution=sol)  # order too low
    capped = solve_pattern((1, 2), 10, cap=2, check=False)
    with pytest.raises(PatternError):
        occurrence_distribution((1, 2), 10, solution=capped)
    jet = solve_pattern((1, 2), 10, jets=2, check=False)
    with pytest.raises(PatternError):
        occurrence_distribution((1, 2), 10, solution=jet)


def test_jets_and_cap_exclusive():
    with pytest.raises(PatternError):
        solve_pattern((1, 2), 8, jets=2, cap=2)


def test_capped_track_matches_low_u_coefficients():
    full = solve_pattern((2, 2), 16, check=False)
    capped = solve_pattern((2, 2), 16, cap=1, check=False)
    for n in range(17):
        a = full.t.c[n][:2]
        b = capped.t.c[n][:2]
        assert tuple(a) + (0,) * (2 - len(a)) == tuple(b) + (0,) * (2 - len(b))


def test_cache_roundtrip(tmp_path):
    cold = solve_pattern((2, 3), 18, check=False, cache=tmp_path)
    warm = solve_pattern((2, 3), 18, check=False, cache=tmp_path)
    assert cold.t == warm.t and cold.p == warm.p
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].suffix == ".json"
    # damage the payload; the loader must fall back to a fresh solve
    files[0].write_text("{bad json")
    again = solve_pattern((2, 3), 18, check=False, cache=tmp_path)
    assert again.t == cold.t


def test_cache_keys_separate_variants(tmp_path):
    solve_pattern((2, 3), 10, check=False, cache=tmp_path)
    solve_pattern((2, 3), 10, variant="literal", check=False, cache=tmp_path)
    solve_pattern((2, 3), 10, jets=2, check=False, cache=tmp_path)
    assert len(list(tmp_path.iterdir())) == 3
