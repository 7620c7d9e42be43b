#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Convert a proof bundle into snarkjs proof.json / public.json files."""
import json
import sys


def dec(h):
    return str(int(h, 16))


def g1(p):
    x, y = (int(c, 16) for c in p)
    return ["0", "1", "0"] if x == 0 and y == 0 else [str(x), str(y), "1"]


def g2(p):
    flat = [int(c, 16) for pair in p for c in pair]
    if not any(flat):
        return [["0", "0"], ["1", "0"], ["0", "0"]]
    return [[str(flat[0]), str(flat[1])], [str(flat[2]), str(flat[3])], ["1", "0"]]


def main():
    if len(sys.argv) != 4:
        sys.exit("usage: bundle_to_snarkjs.py BUNDLE PROOF_OUT PUBLIC_OUT")
    with open(sys.argv[1]) as f:
        bundle = json.load(f)
    proof = bundle["proof"]
    out = {
        "pi_a": g1(proof["pi_a"]),
        "pi_b": g2(proof["pi_b"]),
        "pi_c": g1(proof["pi_c"]),
        "protocol": "groth16",
        "curve": "bn128",
    }
    with open(sys.argv[2], "w") as f:
        json.dump(out, f, indent=1)
    with open(sys.argv[3], "w") as f:
        json.dump([dec(v) for v in bundle["public_values"]], f, indent=1)


if __name__ == "__main__":
    main()
