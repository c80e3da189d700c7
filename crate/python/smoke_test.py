"""Smoke test for the chevalley extension module."""

import json

import chevalley


def main():
    xs = ["x", "y", "t"]
    cusp = chevalley.GroebnerBasis(["x - t^2", "y - t^3"], xs, order="lex")
    assert cusp.contains(chevalley.Poly("y^2 - x^3", xs))

    ring = ["x1", "y1"]
    x, y = chevalley.Poly("x1", ring), chevalley.Poly("y1", ring)
    assert str(chevalley.bracket(x, y)) == "1"
    assert str((x + y) ** 2) == "x1^2 + 2*x1*y1 + y1^2"
    assert str((x * x * y).derivative("x1")) == "2*x1*y1"

    veronese = chevalley.GroebnerBasis(["x*y"], ["x", "y"])
    assert veronese.krull_dimension() == 1
    assert veronese.hilbert_function(4) == [1, 2, 2, 2, 2]

    pq = ["p", "q"]
    xi, through = chevalley.darboux(pq, [("p", "q", "2 + 4*p")], truncation=5)
    two = chevalley.Poly("2", pq)
    pulled = two * (xi[0].derivative("p") * xi[1].derivative("q") - xi[0].derivative("q") * xi[1].derivative("p"))
    gap = pulled - chevalley.Poly("2 + 4*p", pq)
    assert through == 3 and all(gap.homogeneous_part(d).is_zero() for d in range(through + 1))

    labels = [label for label, _, _ in chevalley.list_scenarios("theta")]
    assert labels == ["sl2-adjoint", "quiver-z3", "theta-gl5-m3"], labels

    report = chevalley.run("rank1-torus-m3")
    assert report.verdict == "consistent-with-conjecture"
    assert report.consistent_through == 6
    assert json.loads(report.to_json())["label"] == "rank1-torus-m3"

    witness = chevalley.run("sl3-c3-c3")
    assert witness.verdict == "non-reduced-witness-found"
    print("smoke test passed:", report, witness)


if __name__ == "__main__":
    main()
