"""Smoke test for the asmt Python extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/asmt-*.whl
"""

import os
import tempfile

import asmt

FIXTURE = os.path.join(
    os.path.dirname(__file__), "..", "crates", "core", "fixtures", "synthetic_genus2.jsonl"
)


def main():
    assert asmt.density() == (5551, 46656)
    assert asmt.gsp4f3_closure_order() == 103680

    lam = asmt.Character(1, 1, -2)
    assert lam.astuple() == (1, 1, -2)
    assert asmt.kappa(lam) == [(2, 2, 2), (2, 2, 2), (1, 1, 2), (1, 1, 2)]
    assert asmt.kostant_representatives_words()[0] == "id"
    assert asmt.hodge_tate(3) == ([0, 1, 2, 3], True)
    assert len(asmt.figure1(lam)) > 0
    try:
        asmt.Character(1, 1, -1)
    except asmt.AsmtError as e:
        assert str(e).startswith("DomainError"), e
    else:
        raise AssertionError("parity violation accepted")

    c = asmt.GenusTwoModel([1, -1, 0, 0, 0, 1], [1])
    assert asmt.GenusTwoModel.parse(str(c)) == c
    frob = c.frobenius(5)
    assert frob["good_reduction"]
    assert asmt.points(5, c.f, c.h) == frob["n1"]
    report = c.check(prime_bound=100)
    assert [x["name"] for x in report["conditions"]][0] == "polarization_degree_prime_to_3"
    assert report["overall"] in ("Pass", "Fail", "Inconclusive")
    assert len(c.check_mod2()["conditions"]) == 4
    cmp = asmt.compare(c, c.quadratic_twist(-1), bound=100)
    assert not cmp["agree_up_to_bound"]

    with tempfile.TemporaryDirectory() as d:
        cache = os.path.join(d, "cache.jsonl")
        agg = asmt.lmfdb_ingest(FIXTURE, cache, prime_bound=60, jobs=2)
        assert agg["records"] == 100
        assert asmt.lmfdb_report(cache)["records"] == 100

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
