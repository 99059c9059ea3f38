"""
Block size and predictor comparison
===================================

Generates the bundled synthetic corpus and prints the mean data reduction
rate for each predictor and block size.  Point ``run_bench`` at a directory
of decoded sequences (with a ``corpus.json`` manifest) to run the same
comparison on real material.
"""

import tempfile

from irbrc.bench import run_bench
from irbrc.corpus import write_bundled_corpus

corpus = tempfile.mkdtemp(prefix="irbrc-corpus-")
for path in write_bundled_corpus(corpus):
    print("wrote", path)

report = run_bench(corpus, ["hd", "hvd", "gap", "med", "edge"], [4, 8, 16], "bytes")

print(f"\n{'block':>6} " + " ".join(f"{p:>7}" for p in ("hd", "hvd", "gap", "med", "edge")))
for n in (4, 8, 16):
    cells = [report.average("overall", p, n) for p in ("hd", "hvd", "gap", "med", "edge")]
    print(f"{n:>3}x{n:<2} " + " ".join(f"{100 * d:6.1f}%" for d in cells))

# Per-class rows, like a per-category average table.
print()
for r in report.averages:
    if r.group.startswith("class:") and r.block_size == 8 and r.plane_set == "all":
        print(f"{r.group:<10} {r.predictor:<5} {100 * r.mean_drr:.1f}%  ({r.sequences} sequences)")
