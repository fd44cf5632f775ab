"""Smoke test for the Python extension.

Build and run from the repository root:

    cargo build --release -p wysiwyg-py --features extension-module
    cp target/release/libwysiwyg_py.so python/wysiwyg_py.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import wysiwyg_py as w


def main():
    a, b, d = w.Element.a(), w.Element.b(), w.Element.d()

    assert str(w.Element("A") * w.Element("A^-1")) == "./."
    assert w.Element("A^2 B^-1") == a * a * b.inverse()
    assert (a * b).multiply_by_rewriting(d) == a * b * d
    assert b == a.shift()
    assert a.inverse() * b * a == b.shift()
    assert w.Element.a_power(5).leaf_count() == 7

    assert w.coeff_exact(a) == "1"
    assert w.coeff_exact(d) == "(δ^2-3)/(δ^2-2)"
    assert abs(w.coeff(d, 2.0) - 0.5) < 1e-12
    assert abs(w.coeff(a, 2.0, mode="omega") - 0.5) < 1e-12

    els = [w.Element.identity(), a, b, d, d * b, d * d]
    for n in (5, 6):
        assert w.gram_min_eigenvalue(els, 2 * math.cos(math.pi / n)) > -1e-9
    g = w.gram(els, 2.0)
    assert all(abs(g[i][i] - 1.0) < 1e-12 for i in range(len(els)))

    assert w.lemma43_threshold(d, b, 10) is not None
    assert w.sigma_limit(a, 8) is not None
    assert len(w.an_decay(5)) == 5

    try:
        w.Element("A^")
    except ValueError as e:
        assert "position" in str(e)
    else:
        raise AssertionError("bad word accepted")

    results = w.verify()
    for cid, name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {cid:>2} {name}: {detail}")
    assert all(r[2] for r in results)
    print("smoke test ok")


if __name__ == "__main__":
    main()
