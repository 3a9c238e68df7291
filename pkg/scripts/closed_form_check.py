"""Compare the numeric pipeline with the closed-form (1/2, 1/2) stars on a dense grid.

Prints the worst great-circle error for the triplet pair and the pseudo
star at each delta, plus the largest pseudo-star spread over time.
Where the two triplet roots coincide (sin 2varphi = +-1 and w^2 = 1) the
closed form takes the square root of a rounding-level discriminant, so its
own error there is about sqrt(machine epsilon).
"""

import math

import numpy as np

from mixedstars import majorana, mixedspin, oracles
from mixedstars.validate import set_distance


def main() -> None:
    varphis = [v for v in np.linspace(0, 2 * math.pi, 73) if abs(math.sin(2 * v)) > 1e-6]
    times = np.linspace(0, 2 * math.pi, 121)
    print(f"{'delta':>6} {'triplet err':>12} {'pseudo err':>12} {'pseudo spread':>14}")
    for delta in (0.0, 0.25, 0.5, 1.0, 2.0):
        triplet = pseudo = spread = 0.0
        for varphi in varphis:
            expected_pseudo = oracles.pseudo_star_closed_form_half_half(varphi)
            thetas = []
            for t in times:
                p = oracles.HalfHalfParams(float(varphi), delta, float(t))
                rep = mixedspin.full_representation(oracles.example_state_half_half(p))
                triplet = max(triplet, set_distance(oracles.triplet_stars_closed_form(p), rep.upper_stars))
                pseudo = max(pseudo, majorana.great_circle(expected_pseudo, rep.pseudo_star))
                thetas.append(rep.pseudo_star.theta)
            spread = max(spread, max(thetas) - min(thetas))
        print(f"{delta:>6.2f} {triplet:>12.2e} {pseudo:>12.2e} {spread:>14.2e}")


if __name__ == "__main__":
    main()
