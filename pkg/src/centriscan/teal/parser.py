"""Line-oriented TEAL assembly parser.

Total for any input text: comments are stripped outside string immediates,
labels and `#pragma version` lines are recorded, and unknown opcodes are
kept with an unknown stack effect plus a note diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import Diagnostic

# (pops, pushes) for common TEAL v2-v8 opcodes; anything absent pops/pushes
# an unknown amount and poisons the abstract stack for the rest of its block.
OPCODE_STACK_EFFECTS: dict[str, tuple[int, int]] = {
    # constants and immediates
    "int": (0, 1), "pushint": (0, 1),
    "byte": (0, 1), "pushbytes": (0, 1),
    "addr": (0, 1), "method": (0, 1),
    "intc": (0, 1), "intc_0": (0, 1), "intc_1": (0, 1), "intc_2": (0, 1), "intc_3": (0, 1),
    "bytec": (0, 1), "bytec_0": (0, 1), "bytec_1": (0, 1), "bytec_2": (0, 1), "bytec_3": (0, 1),
    "intcblock": (0, 0), "bytecblock": (0, 0),
    "arg": (0, 1), "arg_0": (0, 1), "arg_1": (0, 1), "arg_2": (0, 1), "arg_3": (0, 1),
    # transaction / global fields
    "txn": (0, 1), "txna": (0, 1), "gtxn": (0, 1), "gtxna": (0, 1),
    "gtxns": (1, 1), "gtxnsa": (1, 1), "global": (0, 1),
    # scratch space
    "load": (0, 1), "store": (1, 0), "loads": (1, 1), "stores": (2, 0),
    # arithmetic / comparison / logic
    "+": (2, 1), "-": (2, 1), "*": (2, 1), "/": (2, 1), "%": (2, 1),
    "<": (2, 1), ">": (2, 1), "<=": (2, 1), ">=": (2, 1),
    "==": (2, 1), "!=": (2, 1), "&&": (2, 1), "||": (2, 1),
    "&": (2, 1), "|": (2, 1), "^": (2, 1), "~": (1, 1), "!": (1, 1),
    "shl": (2, 1), "shr": (2, 1), "exp": (2, 1), "sqrt": (1, 1), "bitlen": (1, 1),
    "addw": (2, 2), "mulw": (2, 2), "divmodw": (4, 4), "expw": (2, 2), "divw": (3, 1),
    "b+": (2, 1), "b-": (2, 1), "b*": (2, 1), "b/": (2, 1), "b%": (2, 1),
    "b<": (2, 1), "b>": (2, 1), "b<=": (2, 1), "b>=": (2, 1), "b==": (2, 1), "b!=": (2, 1),
    "b&": (2, 1), "b|": (2, 1), "b^": (2, 1), "b~": (1, 1),
    # bytes and hashing
    "len": (1, 1), "itob": (1, 1), "btoi": (1, 1), "concat": (2, 1),
    "substring": (1, 1), "substring3": (3, 1), "extract": (1, 1), "extract3": (3, 1),
    "getbyte": (2, 1), "setbyte": (3, 1), "getbit": (2, 1), "setbit": (3, 1),
    "sha256": (1, 1), "keccak256": (1, 1), "sha512_256": (1, 1), "sha3_256": (1, 1),
    "ed25519verify": (3, 1), "ecdsa_verify": (5, 1),
    # stack manipulation
    "pop": (1, 0), "dup": (1, 2), "dup2": (2, 4), "swap": (2, 2),
    "select": (3, 1), "cover": (1, 1), "uncover": (1, 1), "bury": (1, 0),
    "dupn": (1, 1), "popn": (0, 0),
    # flow control
    "b": (0, 0), "bz": (1, 0), "bnz": (1, 0),
    "callsub": (0, 0), "retsub": (0, 0),
    "return": (1, 0), "err": (0, 0), "assert": (1, 0), "nop": (0, 0),
    # application state
    "app_global_get": (1, 1), "app_global_get_ex": (2, 2),
    "app_local_get": (2, 1), "app_local_get_ex": (3, 2),
    "app_global_put": (2, 0), "app_local_put": (3, 0),
    "app_global_del": (1, 0), "app_local_del": (2, 0),
    "app_opted_in": (2, 1), "app_params_get": (1, 2),
    "asset_holding_get": (2, 2), "asset_params_get": (1, 2),
    "acct_params_get": (1, 2),
    "balance": (1, 1), "min_balance": (1, 1),
    "log": (1, 0),
}

BRANCH_OPCODES = frozenset({"b", "bz", "bnz"})
# retsub never falls through, so it terminates blocks like return/err.
TERMINATOR_OPCODES = frozenset({"return", "err", "retsub"})


@dataclass(frozen=True)
class Instruction:
    opcode: str
    immediates: tuple[str, ...]
    line: int
    stack_delta: tuple[int, int] | None  # (pops, pushes); None = unknown


@dataclass
class TealProgram:
    path: str
    version: int = 1
    instructions: list[Instruction] = field(default_factory=list)
    labels: dict[str, int] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)


def _strip_comment(line: str) -> str:
    in_string = False
    i = 0
    n = len(line)
    while i < n:
        c = line[i]
        if in_string:
            if c == "\\" and i + 1 < n:
                i += 2
                continue
            if c == '"':
                in_string = False
        elif c == '"':
            in_string = True
        elif c == "/" and i + 1 < n and line[i + 1] == "/":
            return line[:i]
        i += 1
    return line


def _split_fields(line: str) -> list[str]:
    """Whitespace split keeping quoted string immediates intact."""
    fields: list[str] = []
    i = 0
    n = len(line)
    while i < n:
        c = line[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c == '"':
            i += 1
            while i < n:
                if line[i] == "\\" and i + 1 < n:
                    i += 2
                    continue
                if line[i] == '"':
                    i += 1
                    break
                i += 1
        else:
            while i < n and not line[i].isspace():
                i += 1
        fields.append(line[start:i])
    return fields


def parse_teal(source: str, path: str = "<teal>") -> TealProgram:
    """Parse TEAL text into an instruction list; total for any input."""
    program = TealProgram(path)
    instructions = program.instructions
    diagnostics = program.diagnostics
    for lineno, raw in enumerate(source.splitlines(), 1):
        code = _strip_comment(raw).strip()
        if not code:
            continue
        if code.startswith("#"):
            fields = code.split()
            if fields[0] == "#pragma" and len(fields) >= 3 and fields[1] == "version":
                try:
                    program.version = int(fields[2])
                except ValueError:
                    diagnostics.append(Diagnostic(
                        f"unparseable version pragma {fields[2]!r}", lineno))
            elif fields[0] != "#pragma":
                diagnostics.append(Diagnostic(
                    f"unrecognized directive {fields[0]!r}", lineno))
            continue
        fields = _split_fields(code)
        head = fields[0]
        if head.endswith(":") and not head.startswith('"'):
            label = head[:-1]
            if not label:
                diagnostics.append(Diagnostic("empty label name", lineno))
                continue
            if label in program.labels:
                diagnostics.append(Diagnostic(
                    f"duplicate label '{label}'; last definition wins", lineno))
            program.labels[label] = len(instructions)
            if len(fields) > 1:
                diagnostics.append(Diagnostic(
                    f"content after label '{label}' ignored", lineno))
            continue
        delta = OPCODE_STACK_EFFECTS.get(head)
        if delta is None:
            diagnostics.append(Diagnostic(f"unknown opcode '{head}'", lineno))
        instructions.append(Instruction(head, tuple(fields[1:]), lineno, delta))

    for index, ins in enumerate(instructions):
        if ins.opcode in BRANCH_OPCODES or ins.opcode == "callsub":
            if not ins.immediates:
                diagnostics.append(Diagnostic(
                    f"'{ins.opcode}' without a target label", ins.line, severity="warning"))
            elif ins.immediates[0] not in program.labels:
                diagnostics.append(Diagnostic(
                    f"undefined branch target '{ins.immediates[0]}'",
                    ins.line, severity="warning"))
    return program
