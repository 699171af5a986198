"""Smoke test for the compiled extension.

Build and install first: `maturin build --release -m crates/py/Cargo.toml`, then
`pip install target/wheels/apcrucial-*.whl` and run `python python/smoke_test.py`.
"""

import apcrucial as ap


def main():
    p = ap.Permutation("216453")
    assert ap.is_crucial(p, 3, 3)
    assert not ap.is_bicrucial(p, 3, 3)
    assert ap.is_bicrucial("73418562", 3, 3)

    w = ap.make_bicrucial(p, 3, 3)
    assert w.to_list() == [8, 4, 7, 2, 12, 3, 10, 1, 11, 6, 9, 5]

    big = ap.anti_monotone_33(500)
    assert ap.is_anti_monotone(big, 3, 3)

    assert ap.find_minimal_crucial(3, 4) == 8
    rec = ap.search(3, 3, 9)
    assert rec["exists"] is False

    facts = ap.verify_paper_facts()
    failed = [f["name"] for f in facts if not f["passed"]]
    assert not failed, failed
    print(f"ok: {len(facts)} facts pass; make_bicrucial(216453) = {w}")


if __name__ == "__main__":
    main()
