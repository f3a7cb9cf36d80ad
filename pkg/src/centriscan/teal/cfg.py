"""Basic-block CFG over TEAL branch opcodes.

Block boundaries occur at labels, after b/bz/bnz, and after return/err
(retsub included: it never falls through). `assert` does not end a block;
its failure path is program abort, not an edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import Diagnostic
from .parser import BRANCH_OPCODES, TERMINATOR_OPCODES, TealProgram

FALLTHROUGH = "fallthrough"
BRANCH_TAKEN = "branch_taken"
BRANCH_NOT_TAKEN = "branch_not_taken"


@dataclass(frozen=True)
class BasicBlock:
    index: int
    start: int  # first instruction index
    end: int  # one past the last instruction index


@dataclass
class Cfg:
    blocks: list[BasicBlock] = field(default_factory=list)
    edges: list[tuple[int, int, str]] = field(default_factory=list)
    entry: int = 0
    block_of: list[int] = field(default_factory=list)
    call_edges: list[tuple[int, int]] = field(default_factory=list)

    def successors(self, block: int) -> list[tuple[int, str]]:
        return [(to, kind) for frm, to, kind in self.edges if frm == block]


def build_cfg(program: TealProgram, diagnostics: list[Diagnostic] | None = None) -> Cfg:
    """Partition instructions into blocks and connect branch/fallthrough edges."""
    sink = diagnostics if diagnostics is not None else program.diagnostics
    instructions = program.instructions
    n = len(instructions)
    if n == 0:
        return Cfg()

    leaders = {0}
    for target in program.labels.values():
        if target < n:
            leaders.add(target)
    for index, ins in enumerate(instructions):
        if ins.opcode in BRANCH_OPCODES or ins.opcode in TERMINATOR_OPCODES:
            if index + 1 < n:
                leaders.add(index + 1)

    starts = sorted(leaders)
    blocks = []
    block_of = [0] * n
    for bi, start in enumerate(starts):
        end = starts[bi + 1] if bi + 1 < len(starts) else n
        blocks.append(BasicBlock(bi, start, end))
        for i in range(start, end):
            block_of[i] = bi

    cfg = Cfg(blocks=blocks, entry=0, block_of=block_of)
    edges = cfg.edges
    for block in blocks:
        last = instructions[block.end - 1]
        op = last.opcode
        if op in BRANCH_OPCODES:
            target = _branch_target(program, last, n, sink)
            if op == "b":
                if target is not None:
                    edges.append((block.index, block_of[target], BRANCH_TAKEN))
            else:  # bz / bnz
                if target is not None:
                    edges.append((block.index, block_of[target], BRANCH_TAKEN))
                if block.index + 1 < len(blocks):
                    edges.append((block.index, block.index + 1, BRANCH_NOT_TAKEN))
        elif op in TERMINATOR_OPCODES:
            pass
        elif block.index + 1 < len(blocks):
            edges.append((block.index, block.index + 1, FALLTHROUGH))

    for index, ins in enumerate(instructions):
        if ins.opcode == "callsub":
            target = _branch_target(program, ins, n, sink=None)
            if target is not None:
                cfg.call_edges.append((block_of[index], block_of[target]))
    return cfg


def _branch_target(program, ins, n, sink) -> int | None:
    if not ins.immediates:
        return None
    target = program.labels.get(ins.immediates[0])
    if target is None:
        return None  # already diagnosed by the parser
    if target >= n:
        if sink is not None:
            sink.append(Diagnostic(
                f"branch target '{ins.immediates[0]}' points past the last "
                f"instruction; edge dropped", ins.line))
        return None
    return target
