"""Build bound quiver algebras and work with their modules.

Constructs the three algebras of the worked example from scratch: the
A2 algebra (one arrow), the bound A3 algebra (two arrows, composite
killed), and the triangular total algebra whose representations carry
both halves plus connecting maps.  Then inspects standard modules, hom
spaces and exact-sequence constructions.

Run:  python demos/01_algebras_and_modules.py
"""

from quiverglue import PrimeField, Quiver, build_algebra, relation
from quiverglue.modcat import (
    cokernel,
    decompose,
    direct_sum,
    hom_basis,
    hom_dim,
    injective,
    is_isomorphic,
    kernel,
    projective,
    simple,
)

field = PrimeField(101)

# --- the a-side algebra: 1 --d--> 2 ---------------------------------------
q_a = Quiver(["1", "2"], [("d", "1", "2")])
a_side = build_algebra(q_a, [], field=field, name="a_side")
print(f"a-side algebra: dim {a_side.dim}, basis {[p.label() for p in a_side.basis]}")

# --- the c-side algebra: 3 --a--> 4 --b--> 5 with ba = 0 -------------------
q_c = Quiver(["3", "4", "5"], [("a", "3", "4"), ("b", "4", "5")])
c_side = build_algebra(q_c, [relation(q_c, [(1, ["a", "b"])])], field=field, name="c_side")
print(f"c-side algebra: dim {c_side.dim} (the composite ba is killed)")

# --- the total triangular algebra ------------------------------------------
q_t = Quiver(
    ["1", "2", "3", "4", "5"],
    [("d", "1", "2"), ("a", "3", "4"), ("b", "4", "5"), ("e", "3", "1"), ("g", "4", "2")],
)
total = build_algebra(
    q_t,
    [relation(q_t, [(1, ["a", "g"]), (-1, ["e", "d"])]), relation(q_t, [(1, ["a", "b"])])],
    field=field,
    name="total",
)
print(f"total algebra: dim {total.dim}; the two paths 3->2 are identified:")
print(f"  residue classes 3->2: {len(total.basis_paths_between('3', '2'))}")

# --- standard modules -------------------------------------------------------
print("\nprojectives and injectives of the total algebra (dims on 1..5):")
for v in total.quiver.vertices:
    print(f"  P({v}) {projective(total, v).dim_vector()}   I({v}) {injective(total, v).dim_vector()}")

# --- hom spaces and the Yoneda formula --------------------------------------
p3 = projective(total, "3")
print("\ndim Hom(P(v), P(3)) equals the dimension of P(3) at v:")
for v in total.quiver.vertices:
    print(f"  v={v}: hom={hom_dim(projective(total, v), p3)}  dim={p3.dims[v]}")

# --- kernels, cokernels, decompositions -------------------------------------
p1, p2 = projective(a_side, "1"), projective(a_side, "2")
(incl,) = hom_basis(p2, p1)  # the radical inclusion P(2) -> P(1)
coker, _ = cokernel(incl)
print(f"\ncokernel of P(2) -> P(1) over the a-side is the simple top: {coker.dim_vector()}")
print(f"  isomorphic to S(1): {is_isomorphic(coker, simple(a_side, '1')) is not None}")

ker, _ = kernel(incl)
print(f"kernel of the same inclusion is zero: {ker.is_zero()}")

big = direct_sum(total, [p3, projective(total, "5"), projective(total, "5")])
print("\ndecomposing P(3) (+) P(5) (+) P(5):")
for rep, mult in decompose(big):
    print(f"  summand {rep.dim_vector()} with multiplicity {mult}")
