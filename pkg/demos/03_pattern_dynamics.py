"""Phase separation from the seven-circles state, rendered to PGM images.

Integrates the stabilized scheme for 500 steps and writes grayscale
snapshots at a few times: the circles first sharpen into +1 plateaus on a
-1 background, then coarsen.  By the end most of the domain sits near the
pure phases; the script prints that fraction along with the energy drop.
"""
from pathlib import Path

import numpy as np

from chei import RunConfig, inverse_transform, run

OUT = Path(__file__).resolve().parent / "out" / "patterns"


def main():
    cfg = RunConfig.from_typed({
        "nu": 0.01, "tau": 0.1, "S": 0.1, "samples": 128, "steps": 500,
        "snapshot_times": (0.0, 1.0, 5.0, 50.0), "ic.kind": "circles",
        "out_dir": str(OUT),
    })
    res = run(cfg)

    first, last = res.trace[0], res.trace[-1]
    print(f"energy {first.energy:.6f} -> {last.energy:.6f} "
          f"over {last.step} steps")

    u = inverse_transform(res.final_state.field).values
    near_pure = float(np.mean((np.abs(u) >= 0.8) & (np.abs(u) <= 1.1)))
    print(f"{near_pure:.1%} of grid points within [0.8, 1.1] of a pure phase")

    for t, _ in res.snapshots:
        print(f"  snapshot: {OUT / f'snapshot_t{t:g}.pgm'}")


if __name__ == "__main__":
    main()
