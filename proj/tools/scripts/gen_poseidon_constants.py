#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Emit core/src/poseidon_constants.cpp from a poseidon_constants.json file
(the circomlib/circomlibjs layout: {"C": [[...] per width], "M": [[[...]] per width]}).

Widths 2..9 are emitted (arities 1..8)."""
import json
import sys

MIN_T, MAX_T = 2, 9


def limbs(h):
    v = int(h, 16)
    return [(v >> (64 * i)) & ((1 << 64) - 1) for i in range(4)]


def u256(h):
    return "U256{" + ", ".join(f"0x{l:016x}ULL" for l in limbs(h)) + "}"


def main(src, dst):
    with open(src) as f:
        data = json.load(f)
    out = [
        "// SPDX-License-Identifier: Apache-2.0",
        "// Generated by tools/scripts/gen_poseidon_constants.py. Do not edit.",
        '#include "poseidon_constants.hpp"',
        "",
        "namespace toxizk::poseidon_data {",
        "",
    ]
    for t in range(MIN_T, MAX_T + 1):
        c = data["C"][t - 2]
        m = data["M"][t - 2]
        out.append(f"static const U256 kC{t}[{len(c)}] = {{")
        out.extend(f"    {u256(x)}," for x in c)
        out.append("};")
        out.append(f"static const U256 kM{t}[{t * t}] = {{")
        out.extend(f"    {u256(x)}," for row in m for x in row)
        out.append("};")
        out.append("")
    out.append("const RawParams kRawParams[kNumWidths] = {")
    for t in range(MIN_T, MAX_T + 1):
        out.append(f"    {{{t}, {len(data['C'][t - 2])}, kC{t}, kM{t}}},")
    out.append("};")
    out.append("")
    out.append("}  // namespace toxizk::poseidon_data")
    with open(dst, "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
