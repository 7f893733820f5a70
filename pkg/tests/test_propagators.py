"""Projection windows, frequency counting and the four strategy variants."""

from __future__ import annotations

import random

import pytest

from seqmine import (
    EmptyDatabaseError,
    MiningConfig,
    build_database,
    build_model,
    mine,
)
from seqmine.kernel import SearchEngine
from seqmine.propagators import projected_symbol_counts

from conftest import SDB1_TEXT, engine_patterns, random_sequences

ALL_VARIANTS = ("baseline", "ppic", "ppdc", "ppmixed")

# mining SDB1 at threshold 2 yields exactly these nine patterns
SDB1_THETA2_PATTERNS = [
    ((1,), 3),
    ((1, 2), 3),
    ((1, 2, 3), 2),
    ((1, 3), 2),
    ((2,), 4),
    ((2, 2), 2),
    ((2, 2, 3), 2),
    ((2, 3), 3),
    ((3,), 3),
]


def drive(db, variant, prefix, min_sup=1):
    """Build a model and bind `prefix` one symbol at a time."""
    model = build_model(db, MiningConfig(min_sup=min_sup, propagator=variant))
    model.trail.push_level()
    for depth, symbol in enumerate(prefix):
        assert model.variables[depth].assign(symbol)
        assert model.frequency.propagate(depth)
    return model


# ----------------------------------------------------------- window stacking


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_root_window_covers_every_sequence(sdb1, variant):
    model = build_model(sdb1, MiningConfig(min_sup=1, propagator=variant))
    proj = model.frequency.projection
    assert proj.start.value == 0
    assert proj.size.value == 4
    assert proj.window() == [(1, 0), (2, 0), (3, 0), (4, 0)]


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_window_after_first_symbol(sdb1, variant):
    model = drive(sdb1, variant, [1])  # <A>
    proj = model.frequency.projection
    assert proj.start.value == 4
    assert proj.size.value == 3
    assert proj.window() == [(1, 1), (2, 2), (3, 1)]


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_window_after_two_symbols_and_array_layout(sdb1, variant):
    model = drive(sdb1, variant, [1, 2])  # <A B>
    proj = model.frequency.projection
    assert proj.start.value == 7
    assert proj.size.value == 3
    assert proj.window() == [(1, 2), (2, 3), (3, 2)]
    # stacked layout: root block, then the <A> block, then the <A B> block
    assert proj.sids[:10] == [1, 2, 3, 4, 1, 2, 3, 1, 2, 3]
    assert proj.poss[:10] == [0, 0, 0, 0, 1, 2, 1, 2, 3, 2]


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_child_extension_leaves_parent_block_untouched(sdb1, variant):
    model = drive(sdb1, variant, [1])
    proj = model.frequency.projection
    parent = (list(proj.sids[4:7]), list(proj.poss[4:7]))
    model.trail.push_level()
    assert model.variables[1].assign(2)
    assert model.frequency.propagate(1)
    assert (list(proj.sids[4:7]), list(proj.poss[4:7])) == parent
    model.trail.restore_level()
    assert proj.start.value == 4
    assert proj.size.value == 3


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_frequencies_after_first_symbol(sdb1, variant):
    model = drive(sdb1, variant, [1])
    # suffixes after <A>: <B C B C>, <B C>, <B>: B in 3, C in 2
    assert model.frequency.frequencies() == [0, 0, 3, 2, 0]


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_infrequent_symbols_filtered_from_next_variable_only(sdb1, variant):
    model = drive(sdb1, variant, [1], min_sup=2)
    assert model.variables[1].sorted_values() == [0, 2, 3]
    # variables beyond the next one keep their full domains
    assert model.variables[2].sorted_values() == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_extension_fails_when_support_drops_below_threshold(sdb1, variant):
    model = build_model(sdb1, MiningConfig(min_sup=2, propagator=variant))
    model.trail.push_level()
    assert model.variables[0].assign(4)  # D appears once
    assert not model.frequency.propagate(0)


def test_projected_symbol_counts_recount(sdb1):
    assert projected_symbol_counts(sdb1, [(1, 1)]) == [0, 0, 1, 1, 0]
    assert projected_symbol_counts(sdb1, []) == [0, 0, 0, 0, 0]
    window = [(sid, 0) for sid in sdb1.sids]
    assert projected_symbol_counts(sdb1, window) == [0, 3, 4, 3, 1]


# --------------------------------------------------------- decrement counters


def test_decrement_counters_follow_window_and_restore(sdb1):
    model = build_model(sdb1, MiningConfig(min_sup=1, propagator="ppdc"))
    freq = model.frequency
    assert freq.frequencies() == [0, 3, 4, 3, 1]
    model.trail.push_level()
    assert model.variables[0].assign(1)
    assert freq.propagate(0)
    assert freq.frequencies() == [0, 0, 3, 2, 0]
    model.trail.restore_level()
    assert freq.frequencies() == [0, 3, 4, 3, 1]


def test_adaptive_picks_scratch_for_rare_and_decrement_for_common(sdb1):
    model = build_model(sdb1, MiningConfig(min_sup=1, propagator="ppmixed"))
    freq = model.frequency
    calls = []
    orig_lastpos = freq._scan_lastpos
    orig_decrement = freq._scan_decrement

    def spy_lastpos(a):
        calls.append("lastpos")
        return orig_lastpos(a)

    def spy_decrement(a):
        calls.append("decrement")
        return orig_decrement(a)

    freq._scan_lastpos = spy_lastpos
    freq._scan_decrement = spy_decrement

    # D survives in 1 of 4 suffixes: 2*1 < 4 selects the scratch recount
    model.trail.push_level()
    assert model.variables[0].assign(4)
    assert freq.propagate(0)
    assert calls == ["lastpos"]
    assert freq.frequencies() == projected_symbol_counts(
        sdb1, freq.projection.window()
    )
    model.trail.restore_level()
    assert freq.frequencies() == [0, 3, 4, 3, 1]

    # B survives in 4 of 4: 2*4 >= 4 keeps the decrement pass
    calls.clear()
    model.trail.push_level()
    assert model.variables[0].assign(2)
    assert freq.propagate(0)
    assert calls == ["decrement"]
    model.trail.restore_level()


# ------------------------------------------------------------- end-to-end


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_sdb1_theta2_patterns(sdb1_theta2, variant):
    got = engine_patterns(sdb1_theta2, 2, variant)
    assert got == SDB1_THETA2_PATTERNS


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_self_check_recounts_at_every_node(sdb1_theta2, variant):
    config = MiningConfig(min_sup=2, propagator=variant)
    result = mine(sdb1_theta2, config, self_check=True)
    assert len(result.patterns) == 9


def test_all_variants_trace_identical_search_trees(sdb1_theta2):
    runs = {
        v: mine(sdb1_theta2, MiningConfig(min_sup=2, propagator=v))
        for v in ALL_VARIANTS
    }
    reference = runs["baseline"]
    for run in runs.values():
        assert run.patterns == reference.patterns
        assert run.stats.search_nodes == reference.stats.search_nodes
        assert run.stats.failures == reference.stats.failures
        assert run.stats.solution_count == 9


def test_reported_supports_are_exact(sdb1):
    for pattern, support in engine_patterns(sdb1, 2):
        assert support == sdb1.support(pattern)
        assert support >= 2


def test_peak_projection_depth(sdb1_theta2):
    result = mine(sdb1_theta2, MiningConfig(min_sup=2))
    assert result.stats.peak_projection_depth == 3
    assert result.stats.failures + result.stats.solution_count <= result.stats.search_nodes


def test_solutions_carry_zero_filled_tails(sdb1_theta2):
    model = build_model(sdb1_theta2, MiningConfig(min_sup=2))

    def check(values):
        k = 0
        while k < len(values) and values[k] != 0:
            k += 1
        assert all(v == 0 for v in values[k:])

    engine = SearchEngine(model.trail, model.variables, model.propagators, check)
    assert engine.solve_all() == 9


def naive_window(db, prefix):
    out = []
    for sid in db.sids:
        seq = db.seqs[sid]
        pos = 0
        ok = True
        for a in prefix:
            while pos < len(seq) and seq[pos] != a:
                pos += 1
            if pos == len(seq):
                ok = False
                break
            pos += 1
        if ok:
            out.append((sid, pos))
    return out


def test_windows_match_naive_projection_on_random_prefixes():
    rng = random.Random(7)
    for trial in range(30):
        raw = random_sequences(rng, 8, 8, 4)
        db = build_database(raw, 1)
        frequent = engine_patterns(db, 1)
        if not frequent:
            continue
        prefix, _ = rng.choice(frequent)
        expect = naive_window(db, prefix)
        for variant in ALL_VARIANTS:
            model = drive(db, variant, prefix)
            assert model.frequency.projection.window() == expect, (
                variant,
                raw,
                prefix,
            )


def test_random_corpus_variants_agree_with_self_check():
    rng = random.Random(99)
    for trial in range(25):
        raw = random_sequences(rng, 6, 7, 4)
        theta = rng.randint(1, 3)
        try:
            db = build_database(raw, theta)
        except EmptyDatabaseError:
            continue
        reference = None
        for variant in ALL_VARIANTS:
            result = mine(
                db, MiningConfig(min_sup=theta, propagator=variant), self_check=True
            )
            got = sorted(result.patterns)
            if reference is None:
                reference = got
            else:
                assert got == reference, (variant, raw, theta)


def test_lastpos_scans_no_more_positions_than_full_scan():
    rng = random.Random(5)
    strict = False
    for trial in range(12):
        raw = random_sequences(rng, 10, 12, 4, min_sequences=4, min_length=4)
        db = build_database(raw, 1)
        theta = max(2, db.size // 3)
        base = mine(db, MiningConfig(min_sup=theta, propagator="baseline"))
        ppic = mine(db, MiningConfig(min_sup=theta, propagator="ppic"))
        assert sorted(ppic.patterns) == sorted(base.patterns)
        assert ppic.stats.positions_visited <= base.stats.positions_visited
        if ppic.stats.positions_visited < base.stats.positions_visited:
            strict = True
    assert strict
