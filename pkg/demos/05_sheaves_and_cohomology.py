"""Module sheaves on finite spaces and their cohomology.

A finite space is a poset whose open sets are the down-sets.  Sheaf
cohomology is computed from the Godement resolution and checked against
higher limits over chains.
"""
from pathlib import Path

from sesquiads import cohomology as co, deffile, scheme as sc, smodule as sm
from sesquiads import randomized as rd

z = sm.free_module(rd.f1(), 1)

for name, space in (("point", sc.point_space()), ("Sierpinski", sc.sierpinski()),
                    ("pseudocircle", sc.pseudocircle())):
    hs = co.cohomology(sc.constant_sheaf(space, z), top=2)
    print(f"{name:13s}", "  ".join(f"H^{r.degree} = {r.describe()}" for r in hs))

# five points, two below three: a wedge of two circles
wedge = sc.FiniteSpace(list("abcde"), [(x, y) for x in "ab" for y in "cde"])
print("two loops    ", [r.describe() for r in co.cohomology(sc.constant_sheaf(wedge, z))])

sky = sc.skyscraper(sc.pseudocircle(), "c", z)
print("skyscraper flabby:", co.is_flabby(co.ascend(sky)),
      " acyclic:", co.flabby_acyclicity_check(sky))

# a sheaf map that is full at every stalk but not on the open set {p0, p1, p2}
df = deffile.parse(Path(__file__).parent / "corpus" / "sheaves.ses")
r = sc.fullness_report(df["phi"])
print("full on stalks:", r.stalk_value, " full on all opens:", r.global_value)
print("failing opens:", [u for u, ok in r.on_opens.items() if not ok])

print(sc.export_dot(sc.pseudocircle()))
