"""Smoke test for the epispace extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/python/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

import epispace


def main():
    space, op = epispace.example1()
    assert space.states == ["PsiBot", "PsiA"]
    assert space.beliefs("PsiA") == ["a"]
    assert not space.globally_consistent

    r = op.check("CL3")
    assert r["verdict"] == "violated", r
    assert r["witness"]["state"] == "PsiA"
    assert r["witness"]["input"] == ["-a"]
    for p in ["CL1", "CL2", "CL4", "CL5", "CL6"]:
        assert op.check(p)["holds"], p
    assert op.classify() == {"agm": False, "cl": False, "ecl": False}
    assert op.apply("PsiBot", "a") == "PsiA"
    assert op.apply("PsiA", "!a") == "PsiBot"

    # Text formats round trip.
    again = epispace.Space.parse(space.to_text(), space.name)
    assert epispace.Operator.parse(again, op.to_text()) == op

    space2, op2, assign2 = epispace.example2()
    assert op2.classify()["ecl"]
    assert assign2.is_faithful()["holds"]
    assert assign2.synthesize().equivalent(op2)
    assert op2.extract() == assign2
    entries = {e["state"]: e for e in assign2.entries()}
    assert entries["PsiAB"]["flag"] == "bot"
    assert entries["PsiNAB"]["credible"] == ["-ab"]
    assert "PsiAB" in op2.to_dot()

    try:
        op.extract()
    except ValueError as e:
        assert "at PsiA" in str(e), e
    else:
        raise AssertionError("example 1 is not an extended operator")

    report = epispace.verify(space)
    assert report["cl"] == 0 and report["ecl"] == 2
    assert not report["refuted"]
    assert report["claims"]["Prop1"] == "confirmed"

    three = epispace.Space("three", ["a"], [("PsiA", ["a"]), ("PsiNA", ["-a"]), ("PsiANA", ["a", "-a"])])
    assert three.models("a | !a") == ["-a", "a"]
    assert epispace.count_classes(three) == {"operators": 531441, "agm": 0, "cl": 4, "ecl": 4}

    try:
        epispace.count_classes(three, max_ops=10)
    except epispace.ScaleExceeded:
        pass
    else:
        raise AssertionError("bound not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
