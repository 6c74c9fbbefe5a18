"""The twist knots T_n(x): fixtures, the full pipeline and its certificates."""

from concordance.ledger import replay
from concordance.twistlab import family_entry, twist_report

E = family_entry(2)
print(E.name, " Delta =", E.delta)
print("metabolizer:", E.metabolizer, " completion:", E.d1, E.d2)
print("l1 =", E.l1, " l2 =", E.l2)
print("m1 =", E.m1, " m2 =", E.m2)

rep = twist_report([2, 3, 4])
print(rep.text())
print("replay:", all(replay(c).ok for c in rep.torsion) and replay(rep.independence).ok)

# x = 1 is outside the proven range: the interval straddles zero
print(twist_report([1], exploratory=True).entries[0]["rho1"])
