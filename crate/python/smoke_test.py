"""Smoke test for the nu_engine extension module."""

import json

import nu_engine


def main():
    (s3,) = nu_engine.parse("group S3 = < a, b | a^2, b^2, (a*b)^3 >")
    assert s3.name == "S3"
    assert s3.generators == ["a", "b"]
    assert s3.order() == 6
    assert s3.tensor_order() == 6

    c2 = nu_engine.builtin("C2")
    assert c2.tensor_order() == 2
    nu = nu_engine.build_nu(c2)
    assert nu.order == 8
    assert nu.orders()["theta"] == 4

    d4 = nu_engine.build_nu(nu_engine.builtin("D4"), strategy="cayley")
    assert d4.order == 8 * 8 * d4.orders()["upsilon1"]
    statuses = d4.check("thmA,lemma21,prop25")
    assert statuses == {"thmA": "pass", "lemma21": "pass", "prop25": "pass"}, statuses

    report = json.loads(nu_engine.corpus_report(include="C3,Q8", seed=7))
    assert [e["group"] for e in report["entries"]] == ["C3", "Q8"]
    assert all(c["status"] != "fail" for e in report["entries"] for c in e["checks"])

    try:
        nu_engine.builtin("C7")
    except KeyError:
        pass
    else:
        raise AssertionError("expected KeyError")

    print("smoke test passed:", ", ".join(nu_engine.builtin_names()))


if __name__ == "__main__":
    main()
