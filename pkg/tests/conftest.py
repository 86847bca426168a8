import subprocess
import sys
from pathlib import Path

import pytest

from sympaths import FiniteMap, Letter, Word, extract_pairing, load_instance

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sq4_path() -> str:
    return str(DATA / "sq4.json")


@pytest.fixture(scope="session")
def nc3_path() -> str:
    return str(DATA / "nc3.json")


@pytest.fixture(scope="session")
def sq4(sq4_path):
    return load_instance(sq4_path)


@pytest.fixture(scope="session")
def nc3_maps():
    """The non-commuting fixture as raw maps (it cannot become an Instance)."""
    A = ("a", "b", "c")
    f = FiniteMap(A, ("1", "2"), {"a": "1", "b": "1", "c": "2"})
    h = FiniteMap(A, ("1", "2"), {"a": "1", "b": "2", "c": "2"})
    return A, f, h


def build_reference_trace_fixture():
    """The 14-letter doubled sequence realizing the reference n=7 run.

    One symbol s<i><j> per (f-class i, h-class j) cell, so every square
    completion has a unique answer.  Returns the maps, the doubled word, the
    pairing it extracts, and the expected assignment order.
    """
    F = tuple(f"F{i}" for i in range(1, 8))
    H = tuple(f"H{j}" for j in range(1, 8))
    A = tuple(f"s{i}{j}" for i in range(1, 8) for j in range(1, 8))
    f = FiniteMap(A, F, {f"s{i}{j}": f"F{i}" for i in range(1, 8) for j in range(1, 8)})
    h = FiniteMap(A, H, {f"s{i}{j}": f"H{j}" for i in range(1, 8) for j in range(1, 8)})
    delta = {1: 1, 2: 1, 3: -1, 4: 1, 5: -1, 6: -1, 7: 1}
    left = {1: "s11", 2: "s22", 3: "s32", 4: "s43", 5: "s53", 6: "s61", 7: "s74"}
    right = {1: "s14", 2: "s26", 3: "s37", 4: "s47", 5: "s56", 6: "s65", 7: "s75"}
    letters = [Letter(left[k], delta[k]) for k in range(1, 8)]
    letters += [Letter(right[k], -delta[k]) for k in range(7, 0, -1)]
    doubled = Word(A, tuple(letters))
    return {
        "A": A,
        "f": f,
        "h": h,
        "doubled": doubled,
        "pairing": extract_pairing(doubled, h),
        "expected_pairs": ((1, 6), (2, 3), (4, 5), (7, 14), (8, 9), (10, 13), (11, 12)),
        "expected_fix_order": [
            "d7", "c7", "c6", "c1", "d6", "d1",
            "d2", "c2", "d3", "c5", "d5", "d4", "c4", "c3",
        ],
        "expected_testpairs": [(7, True), (9, False), (2, False), (10, False), (4, False)],
    }


@pytest.fixture(scope="session")
def reference_trace():
    return build_reference_trace_fixture()


def run_cli(args, stdin_text=None):
    """Run the CLI in a subprocess; returns (exit code, stdout, stderr)."""
    completed = subprocess.run(
        [sys.executable, "-m", "sympaths", *args],
        input=stdin_text,
        capture_output=True,
        text=True,
    )
    return completed.returncode, completed.stdout, completed.stderr


@pytest.fixture(scope="session")
def cli():
    return run_cli
