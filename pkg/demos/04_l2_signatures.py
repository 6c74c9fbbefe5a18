"""L^2 signatures of Hermitian matrices over Q[Z] and Q[Z^2]."""

from concordance import HermitianLaurentMatrix, MultiLaurent, l2_signature, parse_poly, rank_bound_check

u = parse_poly("t + t^-1")

# t + t^-1 is positive and negative on arcs of equal length
print("sigma2([t + t^-1])     =", l2_signature(HermitianLaurentMatrix.from_laurent([[u]])))
print("sigma2([t + t^-1 + 3]) =", l2_signature(HermitianLaurentMatrix.from_laurent([[u + 3]])))
print("sigma2([t + t^-1 + 1]) =", l2_signature(HermitianLaurentMatrix.from_laurent([[u + 1]])))

M = HermitianLaurentMatrix.from_laurent([[u, parse_poly("t")], [parse_poly("t^-1"), 1]])
print("2x2 example:", l2_signature(M), " |sigma2| <= 1:", rank_bound_check(M, 1))

# two variables: certified quadrature, an interval
x = MultiLaurent(2, {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
r = l2_signature(HermitianLaurentMatrix([[x]]), max_depth=8)
print("two variables:", r, f"in [{float(r.lo):.4f}, {float(r.hi):.4f}]")
