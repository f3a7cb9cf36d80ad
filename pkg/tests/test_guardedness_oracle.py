"""compute_guardedness vs exhaustive path enumeration on random CFGs."""

import random

from centriscan.teal.detectors import compute_guardedness

from helpers import random_cfg, random_guards_and_funds
from oracle import oracle_verdicts


def _case(seed: int):
    rng = random.Random(seed)
    cfg = random_cfg(rng)
    guards, funds = random_guards_and_funds(cfg, rng)
    return cfg, guards, funds


def test_matches_oracle_on_random_cfgs():
    for seed in range(300):
        cfg, guards, funds = _case(seed)
        result = compute_guardedness(cfg, guards, funds)
        expected = oracle_verdicts(cfg, guards, funds)
        assert result.verdicts == expected, f"seed={seed}"


def test_witness_paths_are_valid():
    edge_set_cache = {}
    for seed in range(300):
        cfg, guards, funds = _case(seed)
        result = compute_guardedness(cfg, guards, funds)
        asserts = {g.instruction for g in guards if g.form == "AssertGuard"}
        pruned = {g.non_fail_edge for g in guards
                  if g.form == "BranchGuard" and g.non_fail_edge is not None}
        edges = {(f, t) for f, t, k in cfg.edges if (f, t, k) not in pruned}
        for point, verdict in result.verdicts.items():
            if verdict is not False:
                assert point not in result.witnesses
                continue
            blocks = result.witnesses[point]
            instrs = result.witness_instructions[point]
            # Starts at entry, ends at the point, block-connected.
            assert blocks[0] == cfg.entry
            assert blocks[-1] == point.block
            assert instrs[0] == cfg.blocks[cfg.entry].start
            assert instrs[-1] == point.instruction
            for a, b in zip(blocks, blocks[1:]):
                assert (a, b) in edges, (seed, point, blocks)
            # Avoids all guard points: no assert instruction on the path and
            # every instruction step is intra-block or a legal block edge.
            assert not (set(instrs[:-1]) & asserts)
            for a, b in zip(instrs, instrs[1:]):
                if b == a + 1 and cfg.block_of[a] == cfg.block_of[b]:
                    continue
                assert a == cfg.blocks[cfg.block_of[a]].end - 1
                assert b == cfg.blocks[cfg.block_of[b]].start
                assert (cfg.block_of[a], cfg.block_of[b]) in edges


def test_guard_monotonicity():
    for seed in range(150):
        rng = random.Random(10_000 + seed)
        cfg = random_cfg(rng)
        guards, funds = random_guards_and_funds(cfg, rng)
        if not funds:
            continue
        with_guards = compute_guardedness(cfg, guards, funds).verdicts
        without = compute_guardedness(cfg, [], funds).verdicts
        for point in funds:
            # Removing all guards can only move verdicts toward unguarded.
            if without[point] is None:
                assert with_guards[point] is None
            else:
                assert without[point] is False or with_guards[point] is not False
        # Adding a guard never makes a guarded point unguarded.
        extra_rng = random.Random(seed)
        extra, _ = random_guards_and_funds(cfg, extra_rng)
        grown = compute_guardedness(cfg, guards + extra, funds).verdicts
        for point in funds:
            if with_guards[point] is True:
                assert grown[point] is True


def test_reachable_points_without_guards_are_all_unguarded():
    for seed in range(100):
        rng = random.Random(20_000 + seed)
        cfg = random_cfg(rng)
        _, funds = random_guards_and_funds(cfg, rng)
        verdicts = compute_guardedness(cfg, [], funds).verdicts
        for point, verdict in verdicts.items():
            assert verdict in (False, None)
