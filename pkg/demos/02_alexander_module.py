"""The rational Alexander module: Smith form, elements, localization."""

from concordance import ModuleElement, SeifertMatrix, build_module, connected_sum, localize, parse_poly
from concordance import anisotropy_criterion, submodule_generated, z_linear_independent

trefoil = SeifertMatrix([[-1, 1], [0, -1]])
fig8 = SeifertMatrix([[1, 1], [0, -1]])
V = connected_sum(trefoil, fig8)

A = build_module(V)
print(A)
print("Smith form verified:", A.verify_smith())

# elements are meridian coordinates; t acts through the divisors
e = ModuleElement([1, 0, 0, 0])
print("t^6 e == e:", A.equal(A.times(parse_poly("t^6"), e), e))
print("Q-coordinates of e:", [str(c) for c in A.vector(e)])

# the cyclic submodule of e lives in the trefoil summand
S = submodule_generated(A, [e])
print("dim <e> =", S.dimension)

# localizing at the trefoil polynomial kills the figure-eight part
L = localize(A, parse_poly("t^2 - t + 1"))
print("dim A_p =", L.dimension, " figure-eight meridian dies:", L.is_zero(ModuleElement([0, 0, 1, 0])))

print("independent {e1, e3}:", z_linear_independent(A, [e, ModuleElement([0, 0, 1, 0])]))
print("anisotropy criterion at Delta(trefoil):", anisotropy_criterion(V, parse_poly("t^2 - t + 1")))
