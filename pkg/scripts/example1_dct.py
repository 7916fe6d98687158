"""Three-qubit bound on the DCT state with weights (1/6, 1/2, 1/18, 1/18, 1/18)."""

import math

from mpconcurrence import DctParams, convex_roof_upper_estimate, dct_state, three_qubit_bound


def main():
    rho = dct_state(DctParams.example1())
    rep = three_qubit_bound(rho)
    crit = rep.per_substate[0].criteria
    print(f"lower bound     {rep.value:.10f}  (sqrt(4/27) = {math.sqrt(4 / 27):.10f})")
    print(f"PT deficits     {[round(d, 10) for d in crit.pt_deficits]}")
    print(f"realign deficits {[round(d, 10) for d in crit.realign_deficits]}")
    print(f"roof estimate   {convex_roof_upper_estimate(rho, trials=2000, seed=0):.6f}  (upper)")


if __name__ == "__main__":
    main()
