"""Alexander polynomials, Levine-Tristram signatures and rho0."""

from concordance import SeifertMatrix, alexander_poly, connected_sum, levine_tristram, mirror_reverse, rho0_knot
from concordance import signature_function

# --- trefoil ---
trefoil = SeifertMatrix([[-1, 1], [0, -1]])
print("Delta(trefoil) =", alexander_poly(trefoil))

# signature at w = -1 (u = 2 cos theta = -2) and at a generic point
print("sigma(-1)   =", levine_tristram(trefoil, -2))
print("sigma(u=3/2) =", levine_tristram(trefoil, "3/2"))

# arc table: theta/pi ranges and values
for row in signature_function(trefoil).table():
    print(f"  [{row['from']:.4f}, {row['to']:.4f}]  {row['value']}")

# the jump sits at theta = pi/3 so the integral is rational
print("rho0(trefoil) =", rho0_knot(trefoil))

# --- twist knot T_-7 and its double ---
T7 = SeifertMatrix([[-7, 1], [0, 1]])
print("Delta(T_-7) =", alexander_poly(T7))
print("rho0(T_-7) =", rho0_knot(T7))            # no circle roots
print("rho0(T_-7 # T_-7) =", rho0_knot(connected_sum(T7, T7)))

# an irrational jump: certified enclosure, and negation under mirror image
K = SeifertMatrix([[-2, 1], [0, -1]])
print("rho0(K) =", rho0_knot(K), "  rho0(-K) =", rho0_knot(mirror_reverse(K)))
