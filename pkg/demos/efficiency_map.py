"""Map the best Gaussian scheme and its efficiency over (n_bar, n_th).

Prints a coarse ASCII chart for a loss-type channel: 'c' marks cells where
the dual-quadrature coherent scheme wins, 's' where the squeezed scheme
wins, uppercase where the winner achieves more than 90% of the Holevo
bound.

Run: python3 demos/efficiency_map.py [tau]
"""

import sys

from gausscap import efficiency_grid


def main():
    tau = float(sys.argv[1]) if len(sys.argv) > 1 else 0.7
    grid = efficiency_grid(tau, (0.01, 100.0), (0.01, 100.0), 16)

    print("tau = %g; rows: n_bar (down = larger), cols: n_th" % tau)
    header = "            " + " ".join(
        "%6.2f" % v for v in grid.n_th_values[::3])
    print(header)
    for i in reversed(range(len(grid.n_bar_values))):
        cells = []
        for j in range(len(grid.n_th_values)):
            rep = grid.reports[i][j]
            mark = "c" if rep.optimal_scheme == "coherent" else "s"
            if rep.efficiency > 0.9:
                mark = mark.upper()
            cells.append(mark)
        print("n_bar %6.2f  %s" % (grid.n_bar_values[i], " ".join(cells)))

    worst = min(r.efficiency for row in grid.reports for r in row)
    best = max(r.efficiency for row in grid.reports for r in row)
    print("\nefficiency range on this grid: %.3f .. %.3f" % (worst, best))


if __name__ == "__main__":
    main()
