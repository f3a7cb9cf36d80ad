#!/usr/bin/env python3
"""Benchmark the compiled scan kernel against the pure-Python twin.

Usage:
    python3 benchmarks/bench_kernels.py [--lines N] [--repeat N]

Times raw token scanning for both kernels on synthetic Solidity of the
requested size, plus the end-to-end pipeline under whichever kernel the
current process selected (set CENTRISCAN_PURE=1 to force the fallback).
"""

import argparse
import time

from centriscan import _scan_py
from centriscan.config import AnalyzerConfig
from centriscan.engine import analyze_solidity_source
from centriscan.scanloop import KERNEL

try:
    from centriscan import _scan_c
except ImportError:
    _scan_c = None


def synthetic_source(lines: int) -> str:
    out = ["contract Bench {", "    address owner;",
           "    mapping(address => uint) bals;",
           "    modifier only_owner { require(msg.sender == owner); _; }"]
    label = 0
    while len(out) < lines - 2:
        label += 1
        out += [
            f"    function f{label}(address to, uint amount) public only_owner {{",
            "        require(msg.sender == owner);",
            "        if (amount > 0) {",
            "            bals[to] = bals[to].add(amount); // credit",
            "        }",
            "        emit Moved(to, amount);",
            "        counter = counter + 1;",
            "    }",
        ]
    out.append("}")
    return "\n".join(out)


def timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lines", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    source = synthetic_source(args.lines)
    mb = len(source) / 1e6
    print(f"input: {args.lines} lines, {len(source)} bytes; best of {args.repeat}")

    pure = timeit(lambda: _scan_py.scan_solidity(source), args.repeat)
    print(f"scan kernel  pure      {pure * 1e3:8.2f} ms   {mb / pure:7.1f} MB/s")
    if _scan_c is not None:
        compiled = timeit(lambda: _scan_c.scan_solidity(source), args.repeat)
        print(f"scan kernel  compiled  {compiled * 1e3:8.2f} ms   "
              f"{mb / compiled:7.1f} MB/s   ({pure / compiled:.1f}x)")
    else:
        print("scan kernel  compiled  (not built)")

    config = AnalyzerConfig()
    pipeline = timeit(
        lambda: analyze_solidity_source(source, "bench.sol", config), args.repeat)
    print(f"full pipeline ({KERNEL} kernel) {pipeline * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
