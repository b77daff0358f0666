"""
__Example: Hardy Weights__

**PyAutoHardy** describes the Hardy weights of the homogeneous tree T_{q+1} as weight objects, which evaluate W(n) at
every radius n and can be checked against the Hardy inequality ⟨Δφ, φ⟩ >= Σ W φ² on test functions.

This script tabulates the weight families, shows how their parameters are validated and checks the inequality on
random test functions of an explicit truncation of the tree.
"""
# from pyprojroot import here
# workspace_path = str(here())
# %cd $workspace_path
# print(f"Working Directory has been set to `{workspace_path}`")

import autohardy as ah

"""
The tree T_3, where every vertex has q = 2 forward neighbours except the root, which has q + 1 = 3.
"""
q = 2
spec = ah.RadialTreeSpec.homogeneous(q=q)

"""
__Weights__

The optimal weight `WOpt` tends to the bottom of the spectrum Λ_q = (q^{1/2} - 1)² from above. `WHalfGamma` is the
weight built from the ground state n^{1/2} q^{-n/2}, whose value at the root is set by γ.
"""
wopt = ah.WOpt(q=q)
whg = ah.WHalfGamma(q=q, gamma=q ** -0.5)

for n in range(6):
    print(f"n = {n}: W_opt = {ah.evaluate_weight(wopt, n):.9f}, W_1/2 = {ah.evaluate_weight(whg, n):.9f}")

"""
The difference W(n) - Λ_q decays like q^{1/2} / (4 n²), which the asymptotic gap n² (W(n) - Λ_q) / q^{1/2} shows.
"""
for n in (10, 100, 1000):
    print(f"n = {n}: asymptotic gap = {ah.asymptotic_gap(whg, n):.6f}")

"""
__Parameters__

Every family has a range of parameters for which it is a Hardy weight. Outside of it `validate_params` reports the
bound that is violated rather than returning a weight.
"""
check = ah.validate_params(ah.WBetaGamma(q=q, beta=0.6, gamma=0.8))
print(check.ok, check.bound)

"""
The largest weight at the root is not comparable with `WOpt`: it is bigger at the root and smaller at radius one.
"""
comparison = ah.best_weight_at_origin(q=q)
print(comparison.exceeds_wopt_at_origin, comparison.comparable_with_wopt)

"""
__Verification__

The Hardy gap ⟨Δφ, φ⟩ - Σ W φ² must be nonnegative for every finitely supported φ. We check it on random functions
on the ball of radius 7 of an explicit truncation, which are reproducible from their seed.
"""
tree = ah.build_truncated(spec=spec, depth=8)

gaps = [
    float(ah.hardy_gap(spec=spec, weight=whg, phi=ah.random_test_function(tree, seed=seed)))
    for seed in range(20)
]
print(f"smallest gap over {len(gaps)} random functions: {min(gaps):.6e}")

"""
A gap table shows which radii contribute most to the weighted norm of a function.
"""
phi = ah.random_test_function(spec, seed=1, annulus=(2, 12))
print(ah.gap_table(spec=spec, weight=whg, phi=phi).to_csv())
