"""
__Example: Radial Trees__

Beyond the homogeneous tree, **PyAutoHardy** works on radial trees, where every vertex at distance n from the root
has m(n) forward neighbours. A `RadialTreeSpec` describes m by a prefix and a rule to extend it.
"""
# from pyprojroot import here
# workspace_path = str(here())
# %cd $workspace_path
# print(f"Working Directory has been set to `{workspace_path}`")

import autohardy as ah

"""
The prefix is repeated from its last entry (`repeat`) or continued by an affine rule m(n) = a + b n (`affine`).
"""
spec = ah.RadialTreeSpec.from_string("custom:prefix=2,3;extend=repeat")
print(spec.to_string(), [spec.branching(n) for n in range(6)])

growing = ah.RadialTreeSpec.custom(prefix=[3, 4, 5], extend="affine", affine=(1.0, 2.0))
print(growing.to_string(), [growing.branching(n) for n in range(6)])

"""
The sphere sizes S_n count the vertices at distance n; they are exact integers until they overflow the count range,
after which the log-space versions are used.
"""
print(ah.tree.sphere_sizes(spec, 8))
print(ah.tree.log_sphere_sizes(spec, 1000)[-1])

"""
__Weights On Radial Trees__

`RadialTreeW` builds a Hardy weight from the supersolution n^β ψ(n), where ψ solves the radial harmonic recursion.
Its parameters need β < 1 and a nondecreasing branching sequence.
"""
weight = ah.RadialTreeW(spec=spec, beta=0.5, gamma=1.0, psi1=1.0)
print(ah.validate_params(weight).ok)
print([round(ah.evaluate_weight(weight, n), 6) for n in range(6)])

"""
The weight is a Hardy weight: its best constant on annuli stays above one.
"""
print(ah.hardy_ratio_inf(spec=spec, weight=weight.as_weight(), annulus=(2, 200)))
