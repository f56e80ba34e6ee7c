"""Fission trees: where circles split apart as the height decreases."""
from nahgraph import build_tree, parse_irregular_class, render_tree, verify_tree_properties

theta = parse_irregular_class("<z^(5/3)> + <z^(3/2)> + <z^(7/3)>")
tree = build_tree(theta)
print(render_tree(tree, "ascii"))
print(verify_tree_properties(tree, theta))
print()

# Untwisted circles only branch at integer heights and carry no mandatory vertices.
theta = parse_irregular_class("<-z^3-z> + <-z^3+z> + <z^3-z^2> + <z^3+z^2>")
print(render_tree(build_tree(theta), "ascii"))
print()
print(render_tree(build_tree(theta), "dot"))
