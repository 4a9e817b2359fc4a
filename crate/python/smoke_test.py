"""Smoke test for the nilspace Python extension."""

import nilspace as ns


def main():
    gf3, gf5, gf9 = ns.Field(3), ns.Field(5), ns.Field("3,2")
    assert (gf9.p, gf9.degree, gf9.q) == (3, 2, 9)

    h4 = ns.Form.named(gf5, "hyperbolic:4")
    ws = ns.max_space(h4, "symmetric")
    assert ws.k_dim == 4 == ns.theorem_bound("symmetric", 4, h4.witt_index())
    for m in ws.basis():
        assert ns.is_nilpotent(gf5, m)
        assert ws.contains(m)

    k4 = ns.Form.named(gf3, "Kn:4")
    wa = ns.max_space(k4)
    assert wa.k_dim == 2 and wa.is_nilpotent()

    wh = ns.max_space(ns.Form.named(gf9, "hyperbolic-hermitian:2"))
    assert wh.k_dim == 1

    d = ns.Form(gf5, "symmetric", [[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    space, (n, r, nu, formula) = ns.general_max_space(d)
    assert (n, r, nu, formula, space.k_dim) == (3, 2, 2, 3, 3)

    flag = ns.stable_flag(h4, ws.basis()[0])
    assert len(flag) == 4 and len(flag[0]) == 2

    report = ns.census(ns.Form.named(gf3, "diag:1,-1,1"))
    assert report["bound_claimed"] == 2 and report["all_match_flag"] and report["passed"]

    probe = ns.probe(ns.Form.named(gf3, "Kn:2"))
    assert probe["label"] == "CONJECTURE-PROBE"

    try:
        ns.probe(k4)
    except ns.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected a budget refusal")

    try:
        ns.Field(4)
    except ValueError:
        pass
    else:
        raise AssertionError("characteristic 2 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
