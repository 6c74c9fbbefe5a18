"""Blanchfield pairings, isotropy and metabolizers."""

from concordance import ModuleElement, SeifertMatrix, blanchfield_pair, connected_sum, is_isotropic
from concordance import metabolizer_search, metabolizer_verify, mirror_reverse, parse_poly

trefoil = SeifertMatrix([[-1, 1], [0, -1]])
e1 = ModuleElement.basis(2, 0)

v = blanchfield_pair(trefoil, e1, e1)
print("Bl(e1, e1) =", v, " ", v.ambient)
# invisible after localizing at a prime the module does not see
print("mod R_(t-3):", blanchfield_pair(trefoil, e1, e1, parse_poly("t - 3")))

# the trefoil is not algebraically slice
print("metabolizer for trefoil (height 4):", metabolizer_search(trefoil, 4))

# K # -K always is
K = connected_sum(trefoil, mirror_reverse(trefoil))
m = metabolizer_search(K, 2)
print("metabolizer for K # -K:", m.vectors, metabolizer_verify(K, m.vectors))

# lift the metabolizer curves (V v) and check the Blanchfield form vanishes on them
lifts = [ModuleElement([sum(K.entries[i][j] * x[j] for j in range(4)) for i in range(4)]) for x in m.vectors]
print("lifts isotropic:", is_isotropic(K, lifts))
