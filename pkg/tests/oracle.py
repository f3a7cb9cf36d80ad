"""Independent guardedness oracle: exhaustive path enumeration.

A fund point is unguarded iff some entry path reaches it without passing
through an assert-guard instruction or crossing the authorized (non-fail)
edge of a branch guard. Enumeration caps revisits at one cycle repetition
per instruction, which is complete for this cut property.
"""

from __future__ import annotations

from collections import deque

from centriscan.teal.cfg import Cfg
from centriscan.teal.detectors import FundModPoint, GuardPoint


def _instruction_successors(cfg: Cfg, pruned: set) -> dict[int, list[tuple[int, bool]]]:
    """Successor map: (next instruction, crosses_authorized_edge)."""
    successors: dict[int, list[tuple[int, bool]]] = {}
    for block in cfg.blocks:
        for q in range(block.start, block.end - 1):
            successors[q] = [(q + 1, False)]
        successors[block.end - 1] = []
    for frm, to, kind in cfg.edges:
        last = cfg.blocks[frm].end - 1
        successors[last].append((cfg.blocks[to].start, (frm, to, kind) in pruned))
    return successors


def plain_reachable(cfg: Cfg) -> set[int]:
    """Instruction indices reachable from entry with no guard semantics."""
    if not cfg.blocks:
        return set()
    successors = _instruction_successors(cfg, set())
    entry = cfg.blocks[cfg.entry].start
    seen = {entry}
    queue = deque([entry])
    while queue:
        q = queue.popleft()
        for s, _ in successors[q]:
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def exists_unguarded_path(cfg: Cfg, guards: list[GuardPoint], target: int,
                          visit_cap: int = 2) -> bool:
    """Search every entry path (cycles capped) for one avoiding all guards."""
    asserts = {g.instruction for g in guards if g.form == "AssertGuard"}
    pruned = {g.non_fail_edge for g in guards
              if g.form == "BranchGuard" and g.non_fail_edge is not None}
    successors = _instruction_successors(cfg, pruned)
    entry = cfg.blocks[cfg.entry].start
    counts: dict[int, int] = {}

    def dfs(q: int) -> bool:
        if q == target:
            return True
        if q in asserts:
            return False
        counts[q] = counts.get(q, 0) + 1
        try:
            for s, crosses_authorized in successors[q]:
                if crosses_authorized:
                    continue
                if counts.get(s, 0) < visit_cap and dfs(s):
                    return True
            return False
        finally:
            counts[q] -= 1

    return dfs(entry)


def oracle_verdicts(
    cfg: Cfg, guards: list[GuardPoint], funds: list[FundModPoint]
) -> dict[FundModPoint, bool | None]:
    reachable = plain_reachable(cfg)
    verdicts: dict[FundModPoint, bool | None] = {}
    for point in funds:
        if point.instruction not in reachable:
            verdicts[point] = None
        else:
            verdicts[point] = not exists_unguarded_path(cfg, guards, point.instruction)
    return verdicts
