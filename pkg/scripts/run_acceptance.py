#!/usr/bin/env python3
"""Run the shipped fixture commands and compare exit codes.

Every command runs as its own `python -m bialgebroid` subprocess; they are
started together and awaited with asyncio. Extra arguments (for example
`--seed 7 --trials 64`) are forwarded to every run.

Usage:
  python3 scripts/run_acceptance.py [-- <flags for bialgebroid>]
"""
from __future__ import annotations

import argparse
import asyncio
import sys
import time
from dataclasses import dataclass
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@dataclass(frozen=True)
class Case:
    args: tuple[str, ...]
    expected: int


CASES = (
    Case(("jacobi", "contact.alg", "contact"), 0),
    Case(("induce", "contact.alg", "contact"), 0),
    Case(("morphism", "contact.alg", "contact"), 0),
    Case(("dualize", "contact.alg", "contact"), 0),
    Case(("jacobi", "z_twist.alg", "twist"), 0),
    Case(("validate", "poisson_plane.alg"), 0),
    Case(("check-pair", "poisson_plane.alg", "plane"), 0),
    Case(("dualize", "poisson_plane.alg", "plane"), 0),
    Case(("induce", "poisson_plane.alg", "plane"), 0),
    Case(("morphism", "poisson_plane.alg", "plane"), 0),
    Case(("triangular", "poisson_plane.alg", "TM", "zeroA", "P"), 0),
    Case(("triangular", "lie_point.alg", "g", "phi", "P"), 0),
    Case(("validate", "negative/broken_jacobi.alg"), 1),
    Case(("validate", "negative/noncocycle.alg"), 1),
    Case(("check-pair", "negative/corrupted_pair.alg", "plane"), 1),
    Case(("morphism", "negative/bad_morphism.alg", "bad"), 1),
    Case(("triangular", "negative/non_mc.alg", "TM", "zero", "P"), 1),
    Case(("jacobi", "negative/bad_jacobi.alg", "bad"), 1),
    Case(("validate", "negative/broken_syntax.alg"), 2),
)


async def _run_case(case: Case, extras: list[str]) -> dict:
    command, fixture, *names = case.args
    cmd = [sys.executable, "-m", "bialgebroid", *extras, command, str(FIXTURES / fixture), *names]
    started = time.monotonic()
    try:
        proc = await asyncio.create_subprocess_exec(
            *cmd, cwd=str(ROOT), stdout=asyncio.subprocess.PIPE, stderr=asyncio.subprocess.PIPE
        )
    except Exception as e:
        return {"case": case, "code": 4, "stderr": f"Failed to start subprocess: {e}", "seconds": 0.0}
    _, stderr = await proc.communicate()
    return {
        "case": case,
        "code": proc.returncode,
        "stderr": stderr.decode(errors="ignore") if stderr else "",
        "seconds": time.monotonic() - started,
    }


async def run_all(extras: list[str]) -> int:
    results = await asyncio.gather(*(_run_case(case, extras) for case in CASES))
    failures = 0
    for result in results:
        case = result["case"]
        ok = result["code"] == case.expected
        failures += not ok
        status = "ok" if ok else "MISMATCH"
        print(f"{status:8} exit={result['code']} expected={case.expected} {result['seconds']:6.1f}s  {' '.join(case.args)}")
        if not ok and result["stderr"]:
            print(result["stderr"].rstrip(), file=sys.stderr)
    print(f"{len(CASES) - failures}/{len(CASES)} cases as expected")
    return 1 if failures else 0


def main():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--", dest="dash", help=argparse.SUPPRESS)
    _, extras = parser.parse_known_args()
    if extras and extras[0] == "--":
        extras = extras[1:]
    sys.exit(asyncio.run(run_all(extras)))


if __name__ == "__main__":
    main()
