"""
Graphs of Lie algebras as D-structures
======================================

A skew operation B on R^n gives the subspace F_B of pairs (ad_B(v), v).  It is
always isotropic, and it is closed under the bracket exactly when B is a Lie
bracket.  Subspaces that are isotropic, inclusion-maximal and closed are
D-structures.
"""

from omnilie import dstruct, liealg, omni

for name, b in liealg.catalog_entries().items():
    f = liealg.graph_subspace(b)
    rep = dstruct.classify(f)
    print(f"{name:12s} is_lie={liealg.is_lie(b)!s:5s} closed={rep.closed!s:5s} "
          f"maximal={rep.maximality.status.value:3s} d_structure={rep.d_structure}")

# the escaping bracket for the non-Lie operation
x, y, br = dstruct.closure_counterexample(liealg.graph_subspace(liealg.catalog("nonlie3")))
print("escaping bracket of nonlie3 graph:", br)

# the structure constants come back from the subspace alone
so3 = liealg.catalog("so3")
print("so3 recovered exactly:", dstruct.recover_bilinear(liealg.graph_subspace(so3)) == so3)

# no linear map gl(n) -> R^n other than zero has an isotropic graph
print("isotropic graph spaces:", [dstruct.isotropic_graph_space(n).dim for n in (1, 2, 3)])

# the horizontal subspace gl(n) + {0} is another D-structure, of a different dimension
print("horizontal, n=2:", dstruct.classify(omni.horizontal(2)).d_structure)

# searching for more
for strategy in dstruct.STRATEGIES:
    res = dstruct.search_d_structures(2, strategy, seed=0, budget=100)
    print(f"n=2 {strategy:10s}: {len(res.structures)} D-structures, dims {[s.dim for s in res.structures]}")
res = dstruct.search_d_structures(1, "exhaustive")
print("n=1 complete list:", [s.to_json() for s in res.structures])
