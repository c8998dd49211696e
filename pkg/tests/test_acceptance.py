"""Acceptance criteria, one test per criterion.

Each test prints ``CRITERION k: PASS|FAIL <detail>`` and the lines are
repeated in the terminal summary.
"""

import time

import numpy as np

from bentparity.construct import (
    LinearOffset,
    build_chain,
    extend,
    extend_with_offset,
    lift_even,
    lift_odd,
)
from bentparity.core import variables_product
from bentparity.oracle import (
    compare_algorithm1,
    compare_algorithm2,
    enumerate_bent,
    naive_nonlinearity_batch,
    naive_walsh_batch,
)
from bentparity.restricted import (
    is_restricted_bent,
    partition,
    restricted_balance,
    verify_parity_balance_theorem,
    verify_spectral_sign_corollary,
)
from bentparity.walsh import fwht, is_bent, signed

import conftest


def record(k, ok, detail, elapsed, limit):
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"CRITERION {k}: {status} {detail} ({elapsed:.2f}s, limit {limit}s)"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and in_time


def all_tables(n):
    ids = np.arange(1 << (1 << n), dtype=np.int64)
    return ((ids[:, None] >> np.arange(1 << n)) & 1).astype(np.uint8)


def offset_cases(bent2):
    x1x2_x3x4 = variables_product(4, 1, 2) ^ variables_product(4, 3, 4)
    cases = [(g, LinearOffset.unpack(b, 2)) for g in bent2 for b in range(16)]
    return cases + [(x1x2_x3x4, LinearOffset.unpack(b, 4)) for b in range(64)]


def test_criterion_1_exhaustive_b4():
    start = time.perf_counter()
    s = enumerate_bent(4, threads=1)
    elapsed = time.perf_counter() - start
    ok = (
        s.total_functions == 65536
        and s.bent_count == 896
        and set(s.bent_nonlinearities) == {6}
        and set(s.bent_weights) <= {6, 10}
        and s.counterexamples == []
    )
    detail = (
        f"scanned={s.total_functions} bent={s.bent_count} Nl={sorted(s.bent_nonlinearities)} "
        f"weights={sorted(s.bent_weights)} counterexamples={len(s.counterexamples)}"
    )
    assert record(1, ok, detail, elapsed, 60)


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()
    walsh_bad = 0
    walsh_checked = 0
    nl_bad = 0
    for n in (1, 2, 3, 4):
        tabs = all_tables(n)
        spec = fwht(signed(tabs))
        walsh_bad += int(np.any(spec != naive_walsh_batch(tabs, n), axis=1).sum())
        walsh_checked += len(tabs)
        fast_nl = (1 << (n - 1)) - np.abs(spec).max(axis=1) // 2
        nl_bad += int((fast_nl != naive_nonlinearity_batch(tabs, n)).sum())
    rng = np.random.default_rng(2024)
    for n in (6, 8, 10, 12):
        tabs = rng.integers(0, 2, size=(100, 1 << n), dtype=np.uint8)
        walsh_bad += int(np.any(fwht(signed(tabs)) != naive_walsh_batch(tabs, n), axis=1).sum())
        walsh_checked += len(tabs)
    elapsed = time.perf_counter() - start
    detail = f"walsh_checked={walsh_checked} walsh_mismatches={walsh_bad} nl_mismatches={nl_bad}"
    assert record(2, walsh_bad == 0 and nl_bad == 0, detail, elapsed, 120)


def test_criterion_3_construction_chain():
    start = time.perf_counter()
    trace = build_chain(variables_product(2, 1, 2), 10)
    ns = [s.n for s in trace.steps]
    nls = [s.nonlinearity for s in trace.steps]
    ok = (
        ns == [4, 6, 8, 10]
        and nls == [6, 28, 120, 496]
        and all(s.bent for s in trace.steps)
        and all(restricted_balance(f).balanced_even for f in _chain_functions())
    )
    elapsed = time.perf_counter() - start
    assert record(3, ok, f"n={ns} Nl={nls}", elapsed, 5)


def _chain_functions():
    f = variables_product(2, 1, 2)
    for _ in range(4):
        f = extend(f)
        yield f


def test_criterion_4_offset_law(bent2):
    # balanced class must be odd iff a0 = 1 and even iff a0 = 0
    start = time.perf_counter()
    cases = offset_cases(bent2)
    not_bent = 0
    mismatches = []
    for g, off in cases:
        f = extend_with_offset(g, off)
        if not is_bent(f):
            not_bent += 1
        rep = restricted_balance(f)
        claimed_ok = rep.balanced_odd if off.a0 == 1 else rep.balanced_even
        claimed_excl = not rep.balanced_even if off.a0 == 1 else not rep.balanced_odd
        if not (claimed_ok and claimed_excl):
            mismatches.append(off)
    elapsed = time.perf_counter() - start
    with_as = sum(1 for off in mismatches if off.a_s == 1)
    detail = (
        f"cases={len(cases)} not_bent={not_bent} class_mismatches={len(mismatches)} "
        f"(of which a_s=1: {with_as})"
    )
    assert record(4, not_bent == 0 and not mismatches, detail, elapsed, 5)


def test_criterion_5_algorithm_transcriptions(bent2, bent4):
    start = time.perf_counter()
    alg1_bad = sum(1 for g in list(bent2) + list(bent4) if compare_algorithm1(g))
    cases = offset_cases(bent2)
    alg2_bad = sum(1 for g, off in cases if compare_algorithm2(g, off))
    elapsed = time.perf_counter() - start
    detail = f"alg1_seeds={len(bent2) + len(bent4)} alg1_diffs={alg1_bad} alg2_pairs={len(cases)} alg2_diffs={alg2_bad}"
    assert record(5, alg1_bad == 0 and alg2_bad == 0, detail, elapsed, 60)


def test_criterion_6_restricted_bent_lifts(bent2, bent4):
    start = time.perf_counter()
    seeds = list(bent2) + list(bent4)
    not_rbent = sum(1 for g in seeds if not (is_restricted_bent(lift_even(g)) and is_restricted_bent(lift_odd(g))))
    item1 = item2 = item3 = 0
    for g in seeds:
        rep = verify_spectral_sign_corollary(g)
        item1 += len(rep.item1_failures)
        item2 += len(rep.item2_failures)
        item3 += len(rep.item3_failures)
    elapsed = time.perf_counter() - start
    ok = not_rbent == 0 and item1 == 0 and item2 == 0 and item3 == 0
    detail = (
        f"seeds={len(seeds)} not_restricted_bent={not_rbent} "
        f"failing_positions item1={item1} item2={item2} item3={item3}"
    )
    assert record(6, ok, detail, elapsed, 120)


def test_criterion_7_partition_structure():
    start = time.perf_counter()
    bad = []
    for n in range(1, 13):
        p = partition(n)
        odd_b_ok = all(p.coset_is_odd_set(int(b)) for b in p.odd_set)
        min_w = p.min_nonzero_weight() == 2 if n >= 2 else p.min_nonzero_weight() == 0
        if not (p.is_xor_closed() and p.contains_zero() and min_w and odd_b_ok):
            bad.append(n)
    elapsed = time.perf_counter() - start
    assert record(7, not bad, f"n=1..12 failing_n={bad}", elapsed, 10)


def test_criterion_8_sampled_theorem_n6():
    start = time.perf_counter()
    s = verify_parity_balance_theorem(6, samples=10_000, rng_seed=0)
    elapsed = time.perf_counter() - start
    ok = s.total_functions == 10_000 and s.bent_count == 10_000 and not s.counterexamples
    detail = (
        f"samples={s.total_functions} bent={s.bent_count} even={s.even_balanced_count} "
        f"odd={s.odd_balanced_count} counterexamples={len(s.counterexamples)}"
    )
    assert record(8, ok, detail, elapsed, 120)
