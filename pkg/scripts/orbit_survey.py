"""Survey Galois orbits and invariant ranks across the whole catalog.

Prints, for every entry: the cyclotomic order, the number of Galois twists,
the resulting class partition, and the rank of the invariant kernel used by
the equivalence test. Everything is recomputed from the shipped files.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fsys.gauge import NonHyperringError, hyperring_words, kernel_basis
from fsys.io import ALL_CATALOG_NAMES, load_catalog
from fsys.modular import ModularSystem
from fsys.twist import galois_orbit


def main() -> None:
    for name in ALL_CATALOG_NAMES:
        sf = load_catalog(name)
        system = sf.system
        base = system.base if isinstance(system, ModularSystem) else system
        t0 = time.perf_counter()
        orbit = galois_orbit(system)
        dt = time.perf_counter() - t0
        classes = " | ".join(
            ",".join(str(k) for k in cls) for cls in orbit.classes
        )
        try:
            words = hyperring_words(base)
            rank = len(kernel_basis(words).basis)
            rank_note = f"kernel rank {rank} over {len(words.words)} words"
        except NonHyperringError:
            rank_note = "not a hyperring"
        print(f"{name}: Q(zeta_{orbit.order}), {len(orbit.twists)} twists, "
              f"{len(orbit.classes)} classes [{classes}] "
              f"({orbit.method}, {dt:.2f}s; {rank_note})")
        if orbit.caveat:
            print(f"  caveat: {orbit.caveat}")


if __name__ == "__main__":
    main()
