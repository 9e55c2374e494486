"""Smoke test for the Python bindings. Run after `pip install ./crates/python`."""

import json
from fractions import Fraction

import sl2cohom


def main():
    w = sl2cohom.Weights([0, 0], 1)
    assert w.n == 2 and w.delta == "1"
    assert w.case == "singular(k=1,t=[0,0],sigma=0)"

    r = sl2cohom.dim_h2(w)
    assert (r.method, r.dim) == ("system", 4), r
    assert sl2cohom.dim_h2(w, "closed").dim == 4
    oracle = sl2cohom.dim_h2(w, "oracle")
    assert oracle.stable and oracle.dim == 1, oracle
    assert json.loads(r.to_json())["weights"]["n"] == 2

    generic = sl2cohom.Weights([Fraction(1, 3)], 0)
    assert sl2cohom.dim_h2(generic).dim == 0
    assert sl2cohom.dim_h2(sl2cohom.Weights(["1", "1", "1"], "5")).dim == 3
    assert sl2cohom.dim_h2(sl2cohom.Weights([0], 0), "summary").dim is None

    singular = sl2cohom.Weights.singular([1, 1], 2)
    assert singular.lambdas == ["-1/2", "-1/2"]

    rows = sl2cohom.build_system(2, 2, [0, 0])
    assert sl2cohom.rank(rows) <= len(rows[0])
    assert sl2cohom.rank([[1, 2], ["1/2", 1]]) == 1
    assert sl2cohom.gamma(2, 3) == 4

    basis = json.loads(sl2cohom.cocycle_basis(w))
    assert len(basis) == 4 and set(basis[0]) == {"A", "B", "C"}

    csv = sl2cohom.table(2, 3, oracle="off").splitlines()
    assert csv[0].startswith("n,k,t-vector") and len(csv) == 19

    code, text = sl2cohom.verify(1, 3, inject_fault=True)
    assert code == 1 and text.rstrip().endswith("FAIL")

    try:
        sl2cohom.Weights(["1/x"], 0)
    except ValueError:
        pass
    else:
        raise AssertionError("malformed rational accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
