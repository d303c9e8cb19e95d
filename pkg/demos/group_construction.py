"""Building and auditing a conjugated sign group.

Conjugating the diagonal +/-1 matrices by an orthogonal basis produces a
commutative group of 2^n symmetric orthogonal involutions; its generators
are Householder reflections, one per basis row.  This script constructs the
group for a random symmetric matrix and measures every group law.
"""

import numpy as np

from signflip import (
    SignPattern,
    conjugated_group,
    enumerate_group,
    group_properties_check,
    symmetric_eigen,
)

rng = np.random.default_rng(21)
n = 3

a = rng.uniform(-1.0, 1.0, size=(n, n))
a = 0.5 * (a + a.T)
decomposition = symmetric_eigen(a)

print("symmetric matrix A:")
for row in a:
    print("  " + " ".join(f"{v: .6f}" for v in row))
print()
print("eigenvalues (ascending):", " ".join(f"{v:.6f}" for v in decomposition.values))
print(f"reconstruction residual: {decomposition.residual:.3e}")

group = conjugated_group(decomposition.vectors)
print()
print(f"group order: {group.order} (= 2^{n})")

print()
print("the generator for flipping coordinate 1 is a Householder reflection:")
generator = group.element(SignPattern.from_string("-++"))
for row in generator.matrix:
    print("  " + " ".join(f"{v: .6f}" for v in row))
involution_gap = np.max(np.abs(generator.matrix @ generator.matrix - np.eye(n)))
print(f"largest entry of gamma^2 - I: {involution_gap:.3e}")

print()
print("full enumeration, one element per sign pattern:")
for element in enumerate_group(decomposition.vectors):
    trace = float(np.trace(element.matrix))
    print(f"  {element.pattern}   trace {trace: .6f}")

audit = group_properties_check(group, exhaustive=True)
print()
print("group-law audit over all pairs:")
print(f"  involution  max error: {audit.involution_max_err:.3e}")
print(f"  commutation max error: {audit.commutation_max_err:.3e}")
print(f"  closure     max error: {audit.closure_max_err:.3e}")
print(f"  closure holds: {audit.closure_ok}")
assert audit.closure_ok
assert audit.order == 2**n

print()
print("every element commutes with A (that is what makes A symmetric):")
worst = max(
    np.linalg.norm(element.matrix @ a - a @ element.matrix)
    for element in enumerate_group(decomposition.vectors)
)
print(f"  max |gamma A - A gamma| over the whole group: {worst:.3e}")
assert worst < 1e-12

print()
print("group construction and audit complete")
