"""
The Beilinson quiver of the projective plane
============================================

Three objects, three arrows in each step, commutation relations.  We build
the quotient algebra, read off its Euler matrix and Serre matrix, and check
that mutating once gives the class predicted by hand.
"""

from tpqr.quiver import Arrow, Quiver, Relation, build_algebra, euler_matrix, verify_associativity
from tpqr.fukaya import coxeter_matrix
from tpqr.hms import ExceptionalCollectionState, mutate

arrows = [Arrow("E1", "E2", 0, f"a{i}") for i in (1, 2, 3)]
arrows += [Arrow("E2", "E3", 0, f"c{i}") for i in (1, 2, 3)]
quiver = Quiver(("E1", "E2", "E3"), tuple(arrows))

# a_i c_{i+1} = a_{i+1} c_i, indices mod 3
relations = [Relation.of(quiver, {(f"a{i}", f"c{i % 3 + 1}"): 1, (f"a{i % 3 + 1}", f"c{i}"): -1})
             for i in (1, 2, 3)]

alg = build_algebra(quiver, relations)
print("hom(E1, E3) has dimension", sum(alg.graded_dims("E1", "E3").values()))   # 6 quadrics
print("associative:", verify_associativity(alg).ok)

chi = euler_matrix(alg)
print("Euler matrix:", chi.tolist())

# chi(x, y) = chi(y, S x)
S = coxeter_matrix(chi)
print("Serre matrix:", S.tolist())
print("S preserves chi:", S.transpose() @ chi @ S == chi)

state = ExceptionalCollectionState.from_euler_matrix(chi)
after = mutate(state, 2, "left")
print("left mutation at slot 2:", after.classes)   # second slot becomes [E3] - 3[E2]
print("still exceptional:", after.euler.tolist())
