"""The pentagon complex for A5 and the Bredon resolution of its subdivision."""
from mackey_kit import floyd_richardson as fr

M = fr.build_floyd_richardson()
print("cells of M:", M.counts(), "Euler characteristic", M.euler_characteristic())
print("reduced homology of M:", M.homology().reduced)

L = fr.complex_L()
print("cells of L:", L.counts(), "admissible:", L.is_admissible())

report = fr.verify_acyclic("L", "all-proper")
for label, info in report["details"]["fixed"].items():
    print(f"  fixed set of {label:>3}: {info}")

O, _, _ = fr.categories("proper")
B = fr.bredon_L("L")
for n, module in enumerate(B.complex.modules):
    print(f"degree {n}:", [O.object_label(c) for c in module.summands])
print("d o d = 0:", B.complex.check_d_squared())
print("exact over the proper family:", B.complex.is_exact())

# Over all subgroups the top object sees an empty fixed set.
print("exact over all subgroups:", fr.bredon_L("L", "all").complex.is_exact())
