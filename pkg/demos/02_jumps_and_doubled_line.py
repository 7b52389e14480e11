"""Two more quotients of the plane: constant-size jumps and a doubled line.

The map (x, y) -> k*x + y collapses the plane along a slanted direction.
The four unit displacements then induce line steps +k, -k, +1, -1, i.e. a
walk that mixes unit steps with coherent jumps of size k.  The special case
k = 1 folds the two step families onto each other and yields a line whose
every edge is doubled.
"""

import qwproj as qp

steps = 30

for name, kwargs in (("lattice_to_jumps", {"k": 3}), ("lattice_to_doubled", {})):
    desc = qp.scenario(name, **kwargs)
    induced = {d.label: d.delta[0] for d in desc.pmap.target.displacements}
    print(f"{name}: induced displacements {induced}")

    psi0 = desc.distinguished_states["origin"]()
    spec = qp.induced_walk(desc.walk, desc.pmap)
    final = qp.evolve(spec, qp.project_state(desc.pmap, 0.0, psi0, normalize=True), steps)
    dist = qp.position_distribution(final)

    spread = sum(p * pos[0] ** 2 for pos, p in dist.items()) ** 0.5
    edge = max(abs(pos[0]) for pos in dist)
    print(f"  after {steps} steps: rms position {spread:.2f}, support reaches |x| = {edge}")

    report = qp.verify_commutation(desc.walk, desc.pmap, 0.0, psi0, steps)
    print(f"  projected evolution matches: max residual {report.max_residual:.3e}\n")

# the jump walk spreads farther per step than the doubled line because the
# induced displacements are longer; both inherit their dynamics from the
# same planar parent
