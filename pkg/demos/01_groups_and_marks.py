"""Subgroup classes, the table of marks and Burnside ring products for A5."""
from mackey_kit.burnside import BurnsideElement, multiply_via_marks, table_of_marks
from mackey_kit.permgrp import conjugacy_classes, enumerate_subgroup_classes, named_group

G = named_group("A5")
T = enumerate_subgroup_classes(G)
print("order", G.order)
print("element class sizes", sorted(len(c) for c in conjugacy_classes(G)))
for i, c in enumerate(T.classes):
    print(f"  class {i}: {T.label(i):>3}  order {c.order:>2}  conjugates {c.size}")

# Rows are subgroups H, columns orbits G/K; entry = |(G/K)^H|.
marks = table_of_marks(G, T)
print("table of marks")
for label, row in zip(T.labels(), marks):
    print(f"  {label:>3}", " ".join(f"{x:>2}" for x in row))

# A5 acting on pairs of points of {0..4}: the diagonal plus a free C3-orbit.
x = BurnsideElement.basis(T, T.index_by_label("A4"))
print("[A5/A4]^2 =", x * x)
print("same via marks:", multiply_via_marks(x, x) == x * x)
