"""Water-filling over a fixed noise spectrum at several energy budgets.

Shows how the active-mode count grows with the budget and that the
common water level sits above every active mode's noise.

Run: python3 demos/water_filling.py
"""

import numpy as np

from gausscap import waterfill

SPECTRUM = np.array([0.4, 0.9, 1.7, 3.2, 6.0])


def main():
    print("noise spectrum:", ", ".join("%g" % v for v in SPECTRUM))
    print()
    for budget in (0.3, 1.0, 4.0, 20.0):
        res = waterfill(SPECTRUM, budget)
        powers = ", ".join("%.4f" % p for p in res.powers)
        print("budget %6.2f: water level %8.4f, %d of %d modes active"
              % (budget, res.nu, res.k_active, len(SPECTRUM)))
        print("  powers: [%s]" % powers)
        print("  joint rate: %.5f bits" % res.mutual_info_bits)
        assert abs(res.powers.sum() - budget) < 1e-9
    print()
    print("every budget is spent exactly; inactive modes get zero power")


if __name__ == "__main__":
    main()
