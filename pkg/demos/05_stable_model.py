"""Truncate the induced resolution and test the kernel for projectivity."""
from mackey_kit import floyd_richardson as fr
from mackey_kit.gcw import point_complex
from mackey_kit.orbitmackey import Family
from mackey_kit.permgrp import enumerate_subgroup_classes, group_from_generators

proper = Family.named(fr.a5_table(), "proper")
for m in (2, 1, 0):
    d = fr.stable_model_report(fr.complex_L(), proper, m)["details"]
    print(f"m={m}: kernel in degree {d['kernel_degree']} is {d['verdict']}, cover {d['cover']}")
    print("      kernel ranks", d["kernel_ranks"])

print("cells by stabilizer:", d["cells"])

trivial = Family.all(enumerate_subgroup_classes(group_from_generators(1, [])))
d = fr.stable_model_report(point_complex(trivial.group), trivial, 0)["details"]
print("point, trivial group:", d["verdict"], "length", d["achieved_length"])
