"""Digit-based 3-coloring keeps same-colored progressions short.

Color every n in [1, N] by counting base-m digits equal to 2 at even
positions (mod 3).  When the allowed common differences are the pairwise
differences of odd powers of m, the longest monochromatic arithmetic
progression stays below m^2 + m + 1 no matter how large the window gets.
This script measures the actual maximum for a few bases and windows.
"""

from ladderkit import (
    DigitColoringParams,
    OddPowerDiffs,
    base_m_digit_coloring,
    diffset_members,
    max_mono_ap_length,
    validate_witness,
)

for m in (5, 6, 7):
    bound = m * m + m + 1
    print(f"base m={m}, theoretical AP-length ceiling {bound}")
    for n in (10 ** 4, 10 ** 5, 10 ** 6):
        c = base_m_digit_coloring(DigitColoringParams(m), n)
        spec = OddPowerDiffs(m)
        steps = diffset_members(spec, n - 1)
        length, w = max_mono_ap_length(c, spec, cap=bound + 10)
        assert length <= bound
        assert w is None or validate_witness(w, c, spec)
        print(f"  N={n:>8}: {len(steps)} usable differences, "
              f"longest monochromatic AP = {length}")
        if w is not None and length > 1:
            print(f"           witness: start {w.a}, difference {w.d}, "
                  f"color {w.color}")
    print()

print("the ceiling never moves with the window; that is the whole point")
