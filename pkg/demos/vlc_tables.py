"""
Small-value VLC tables
======================

Prints the codeword table for every category and codes one 4x4 unit.
"""

from irbrc.entropy import CATEGORIES, BitWriter, category_for, encode_unit, residual_code

for c in CATEGORIES[1:7]:
    bound = 1 << c.k
    shown = sorted({0, 1, 2, bound // 2, bound - 1, bound})
    row = ", ".join(f"{m}:{residual_code(m, c)}" for m in shown if m <= bound)
    print(f"category {c.id} header {c.header:<6} (|r| <= {bound:>2})  {row}")

# A unit's table is chosen by its largest magnitude.
unit = [0, 1, -1, 0, 2, 0, 0, -3, 0, 0, 1, 0, 0, 0, 0]
w = BitWriter()
c = encode_unit(unit, w)
print(f"\nunit {unit}")
print(f"max |r| = {max(map(abs, unit))} -> category {c.id}, {w.bit_length} bits: {w.to01()}")

# Above 32 the unit falls back to signed order-0 Exp-Golomb codes.
print(f"\nmax |r| = 100 -> header {category_for(100).header}")
