"""Search the (theta, phi) grid for states that separate DS and DP under U = sum - max.

A witness satisfies U(p+q) >= U(y) > U(p x q) >= U(x), where y is the
unnormalized direct-sum bound 2 F(s(1/2)) and x is F(t).
"""

import numpy as np

from majur.bounds import dp_bound_t, ds_bound_s
from majur.measures import measure_U
from majur.quantum import born_probabilities, builtin_measurement, make_state_deg


def main(step=10):
    A, B = builtin_measurement("A"), builtin_measurement("B")
    y = ds_bound_s(A, B, 0.5).flattened.scaled(2)
    x = dp_bound_t(A, B).flattened
    u_y, u_x = measure_U(y), measure_U(x)
    print(f"U(y) = {u_y:.6f}  U(x) = {u_x:.6f}")
    found = []
    for theta in range(0, 91, step):
        for phi in range(0, 91, step):
            psi = make_state_deg(theta, phi)
            p, q = born_probabilities(psi, A), born_probabilities(psi, B)
            u_sum = measure_U(np.concatenate([p, q]))
            u_prod = measure_U(np.outer(p, q).ravel())
            if u_sum >= u_y - 1e-12 and u_y > u_prod >= u_x - 1e-12:
                found.append((theta, phi, u_sum, u_prod))
    print(f"{len(found)} witnesses on the {step}-degree grid")
    for theta, phi, u_sum, u_prod in found[:5]:
        print(f"  theta={theta} phi={phi}: U(p+q)={u_sum:.4f}  U(pxq)={u_prod:.4f}")


if __name__ == "__main__":
    main()
