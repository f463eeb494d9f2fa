#!/usr/bin/env python3
# Copyright 2026 The fbqc-compare Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled fusion-network cell definitions.

Cells are indexed by integer coordinates along the primitive vectors. An
edge [u, v, [dx, dy, dz]] joins node u of cell c to node v of cell c + d.

  four_star: body-centred cubic syndrome graphs (one node per cell).
  eight_ld:  diamond syndrome graphs (two nodes per cell).

Dual edges copy the primal edge shape, shifted by half a cell.
"""

import json
import pathlib

BCC = [[0, 0, [1, 0, 0]], [0, 0, [0, 1, 0]], [0, 0, [0, 0, 1]], [0, 0, [1, 1, 1]]]
DIAMOND = [[0, 1, [0, 0, 0]], [0, 1, [-1, 0, 0]], [0, 1, [0, -1, 0]], [0, 1, [0, 0, -1]]]


def cell(family, nodes, edges, note):
    return {
        "schema": 1,
        "family": family,
        "note": note,
        "primal_nodes": nodes,
        "dual_nodes": nodes,
        "sites": [{"primal": e, "dual": e} for e in edges],
    }


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "networks"
    out.mkdir(parents=True, exist_ok=True)
    defs = {
        "four_star.json": cell("4star", 1, BCC, "bcc syndrome graphs; assumed geometry"),
        "eight_ld.json": cell("8ld", 2, DIAMOND, "diamond syndrome graphs; assumed geometry"),
    }
    for name, d in defs.items():
        (out / name).write_text(json.dumps(d, indent=2) + "\n")


if __name__ == "__main__":
    main()
