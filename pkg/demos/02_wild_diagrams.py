"""Core diagrams of irregular classes, their rescaled form and the dimension count."""
from nahgraph import build_diagram, cartan_dimension, emit_diagram, parse_irregular_class, rescale
from nahgraph.classify import check_decorated, is_acute_isosceles


def show(title, text):
    theta = parse_irregular_class(text)
    d = build_diagram(theta)
    print(f"== {title}: {theta}")
    for v, r, row in zip(d.vertices, d.r, d.B):
        print(f"  {str(v):<24} r={r}  ", " ".join(f"{x:>3}" for x in row))
    print("  rescaled:")
    for row in rescale(d).Btilde:
        print("   ", " ".join(f"{str(x):>6}" for x in row))
    ok, why = check_decorated(d)
    print("  rescaled triangles isosceles, loops below edges:", ok)
    return d


show("three monomial circles", "<z^(5/3)> + <z^(3/2)> + <z^(7/3)>")
show("nested common parts", "<z^(5/2)+z^(7/3)> + <z^(5/2)+z^(5/4)> + <z^(5/2)>")

# A loop-free triangle whose edges 6, 4, 3 do not form an acute isosceles triangle.
d = show("a triangle", "<z^3> + <z^(4/3)> + <z^(3/2)>")
print("  acute isosceles:", is_acute_isosceles(d.diagram)[0])
print("  dimension with all multiplicities 1:", cartan_dimension(d.diagram, [1, 1, 1]))
print()
print(emit_diagram(d, "dot"))
