#!/usr/bin/env python3
"""Smoke test for the ghcode_py extension module.

Builds the cdylib with cargo, copies it next to this script under the
importable name, and exercises the bound API end to end. Run from anywhere:

    python3 python/smoke_test.py [--release]
"""

import os
import shutil
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)

TABLE_1 = [
    "11", "011", "0011", "1011", "00011", "10011", "01011", "000011",
    "100011", "010011", "001011", "101011", "0000011", "1000011", "0100011",
]


def build_and_import(release: bool):
    profile = "release" if release else "debug"
    cmd = ["cargo", "build", "-p", "ghcode-py"]
    if release:
        cmd.append("--release")
    subprocess.run(cmd, cwd=ROOT, check=True)
    built = os.path.join(ROOT, "target", profile, "libghcode_py.so")
    target = os.path.join(HERE, "ghcode_py.so")
    shutil.copyfile(built, target)
    sys.path.insert(0, HERE)
    import ghcode_py

    return ghcode_py


def main():
    gh = build_and_import("--release" in sys.argv[1:])
    print(f"ghcode_py {gh.__version__} loaded")

    std = gh.SequenceDef.standard()
    assert std.a == 1 and std.b == 2 and std.is_standard()
    assert std.prefix(5) == [1, 2, 3, 5, 8]
    assert std.term(4) == 8

    m2 = gh.SequenceDef.variant(-2)
    assert (m2.a, m2.b) == (-2, 3)
    assert m2.prefix(8) == [-2, 3, 1, 4, 5, 9, 14, 23]
    assert m2.search_bound(3) == 5

    # Single-value coding against the reference table.
    for n, expected in enumerate(TABLE_1, start=1):
        assert gh.encode_integer(n, std) == expected, f"n={n}"
        assert gh.encode_integer(n, std, policy="greedy") == expected
        assert gh.decode_codeword(expected, std) == (n, len(expected))
    print("standard table of 15 codewords reproduced")

    assert gh.zeckendorf_greedy(10) == "01001"
    assert gh.representation_to_codeword("01001") == "010011"

    # Multiple representations under a variant sequence.
    assert gh.enumerate_representations(3, m2) == ["01", "10001"]
    assert gh.representation_count(3, m2) == 2
    assert gh.decode_codeword("100011", m2) == (3, 6)
    print("variant enumeration and decoding agree")

    # Feasibility and uniqueness analysis.
    m5 = gh.SequenceDef.variant(-5)
    assert gh.feasibility_scan(m5, 15) == [5, 12]
    assert gh.uniqueness_profile(std, 100) == {1: 100}
    assert gh.uniqueness_profile(m5, 15) == {0: 2, 1: 13}
    lengths = gh.codeword_lengths(gh.SequenceDef.variant(-4), 11)
    assert lengths[9] == 7 and lengths[10] == 5  # lengths dip after n=10
    print("feasibility scan and uniqueness profile agree")

    # Raw streams.
    packed, bit_len = gh.encode_stream([1, 2, 3], std)
    assert bit_len == 9 and packed == bytes([0b11011001, 0b10000000])
    assert gh.decode_stream(packed, bit_len, 3, std) == [1, 2, 3]

    # Rotation schedule: frozen outputs of splitmix64 at seed 0, mod 3.
    assert [gh.schedule_index(0, k, 3) for k in range(4)] == [1, 0, 1, 1]

    # Containers, fixed and rotating.
    payload = b"the quick brown fox jumps over the lazy dog " * 64
    packed = gh.compress(payload)
    assert isinstance(packed, bytes) and packed[:4] == b"GHC1"
    assert gh.decompress(packed) == payload
    print(f"fixed-mode container: {len(payload)} -> {len(packed)} bytes")

    rotating = gh.compress(
        payload,
        rotate_seed=42,
        rotate_set=[std, m2, gh.SequenceDef.variant(-3)],
        block_size=8,
    )
    assert gh.decompress(rotating) == payload
    again = gh.compress(
        payload,
        rotate_seed=42,
        rotate_set=[std, m2, gh.SequenceDef.variant(-3)],
        block_size=8,
    )
    assert rotating == again, "rotation must be deterministic"
    print(f"rotating container: {len(payload)} -> {len(rotating)} bytes")

    # Errors arrive as ValueError.
    for bad_call in (
        lambda: gh.encode_integer(5, m5),
        lambda: gh.decompress(b"junk"),
        lambda: gh.compress(bytes(range(10)), seq=m5),
        lambda: gh.encode_integer(3, m2, policy="greedy"),
    ):
        try:
            bad_call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    print("error paths raise ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
