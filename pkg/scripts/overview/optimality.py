"""
__Example: Optimality__

A Hardy weight W is optimal when no larger weight is a Hardy weight and the inequality fails for C W with any C > 1.
**PyAutoHardy** probes optimality numerically on radial functions, where the inequality reduces to a symmetric
tridiagonal (Jacobi) matrix on each window [a, N) of radii.
"""
# from pyprojroot import here
# workspace_path = str(here())
# %cd $workspace_path
# print(f"Working Directory has been set to `{workspace_path}`")

import autohardy as ah

q = 2
spec = ah.RadialTreeSpec.homogeneous(q=q)
whg = ah.WHalfGamma(q=q, gamma=q ** -0.5)

"""
__Bottom Of The Spectrum__

The smallest eigenvalue of the Laplacian on the balls B_N decreases to Λ_q, and a Richardson extrapolation of the
sweep estimates the limit.
"""
sweep = ah.poincare_bottom_sweep(spec=spec, windows=(3, 10, 50, 200))
print(sweep.to_csv())

"""
__Criticality__

For a critical weight the smallest eigenvalue of Δ - W on B_N tends to zero, while for half of it the limit stays
positive.
"""
print(ah.criticality_probe(spec=spec, weight=whg, windows=(10, 100, 1000)).to_csv())
print(ah.criticality_probe(spec=spec, weight=0.5 * whg, windows=(10, 100, 1000)).to_csv())

"""
__Optimality Near Infinity__

The best constant on the annulus [2, N) decreases to one as N grows.
"""
print(ah.hardy_ratio_sweep(spec=spec, weight=whg, windows=(100, 1000, 10000)).to_csv())

"""
__Null-Criticality__

The ground state must not be in ℓ²_W. The partial sums of its weighted norm grow linearly, so doubling N doubles them.
"""
sums = ah.null_criticality_sums(spec=spec, weight=ah.WOpt(q=q), z=ah.green_sqrt(q), n_max=2000)
print(f"partial sum ratio at N = 2000: {sums.final_ratio:.4f}")

"""
__Violators__

For C > 1 a radial function violating the inequality with C W exists. The search doubles the annulus until one is
found and recomputes its gap independently of the eigen-solve.
"""
witness = ah.find_violator(spec=spec, weight=whg, constant=1.5)
print(f"ratio {witness.ratio:.6f} on [{witness.window[0]}, {witness.window[1]}), verified by {witness.verified_by}")
