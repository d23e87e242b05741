"""Orbit and Mackey categories of S3, and the functor between them."""
import random

from mackey_kit.orbitmackey import (Family, MackeyCategory, OrbitCategory, PiFunctor,
                                    double_coset_rank)
from mackey_kit.permgrp import enumerate_subgroup_classes, named_group

T = enumerate_subgroup_classes(named_group("S3"))
fam = Family.all(T)
O, M = OrbitCategory(fam), MackeyCategory(fam)
labels = T.labels()

print("hom ranks in the orbit category (rows source, columns target)")
for a in O.objects:
    print(f"  {labels[a]:>3}", [O.hom_rank(a, b) for b in O.objects])

print("hom ranks in the Mackey category, and the double coset count")
for a in M.objects:
    print(f"  {labels[a]:>3}", [M.hom_rank(a, b) for b in M.objects],
          [double_coset_rank(T, a, b) for b in M.objects])

# A span from S3/e to S3/S3 with middle orbit S3/e: restriction to e.
print("spans S3/e -> S3/S3:", [M.span(0, 3, k) for k in range(M.hom_rank(0, 3))])

pi = PiFunctor(O, M)
print("functor laws on every composable pair:", pi.check_functorial(), "pairs checked")
print("composition associative on samples:",
      M.check_associativity(samples=500, rng=random.Random(0)))
