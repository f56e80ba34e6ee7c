"""Which graphs arise as core diagrams?  Three possible answers with evidence."""
from nahgraph import Diagram, build_diagram, classify, verify_certificate

examples = {
    "K_{2,3}": [[0, 0, 1, 1, 1], [0, 0, 1, 1, 1], [1, 1, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 0, 0, 0]],
    "four vertices": [[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 0], [2, 2, 0, 0]],
    "triangle 3,4,6": [[0, 3, 4], [3, 0, 6], [4, 6, 0]],
    "pentagon": [[1 if abs(i - j) in (1, 4) else 0 for j in range(5)] for i in range(5)],
    "primes": [[0, 2, 3, 5], [2, 0, 7, 11], [3, 7, 0, 13], [5, 11, 13, 0]],
}

for name, rows in examples.items():
    g = Diagram.from_matrix(rows)
    v = classify(g)
    print(f"{name:<16} {v.tag}")
    if v.tag == "FissionGraph":
        # the witness class rebuilds the same matrix
        order = [v.assignment[x] for x in g.vertices]
        assert build_diagram(v.witness).diagram.reordered(order).B == g.B
        print("   witness", v.witness)
    elif v.tag == "Candidate":
        print("   decoration", v.witness, "(necessary condition only)")
    elif v.tag == "NotNAH":
        print("   certificate checks out:", verify_certificate(g, v.certificate))
