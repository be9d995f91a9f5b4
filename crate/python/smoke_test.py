"""Smoke test for the pyfockkl extension module.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import pyfockkl as fk


def main():
    mu = fk.Partition("6,2,1")
    assert mu.hat(3, 3) == fk.Partition([12, 6, 3])
    assert fk.Partition("8,1").tilde(3, 3) == fk.Partition([12, 5, 4])
    assert mu.restricted_decomp(3, 3) == ([3, 2, 1], [1, 0, 0])
    assert fk.ell_mu(mu, 3, 3) == 0
    assert fk.Partition("4,1").n_core(3) == fk.Partition("1,1")
    assert str(mu.conjugate()) == "3,2,1,1,1,1"

    e = fk.Engine()
    d = e.d_poly(fk.Partition("1,1"), fk.Partition("2"), 2, 2)
    assert d == fk.Poly("q") and d.coeffs() == {1: 1}

    col = e.gplus(mu, 3, 3)
    assert [str(p) for p, _ in col] == [
        "3,2,1,1,1,1", "3,1,1,1,1,1,1", "2,2,2,1,1,1", "2,1,1,1,1,1,1,1",
    ]
    assert [str(c) for _, c in col] == ["1", "q", "q", "q^2"]
    nu = fk.Partition("3,2,1")
    assert e.gplus(nu.conjugate(), 3) == fk.llt_gplus(nu, 3)

    holds, lhs, rhs, shift = e.check_theorem2(fk.Partition("8,1"), mu, 3, 3)
    assert holds and lhs == rhs == fk.Poly("q^2") and shift == 3

    dm = e.d_matrix(4, 2)
    em = e.e_matrix(4, 2)
    assert len(dm) == len(fk.partitions(4)) == 5
    assert dm.to_csv().startswith("# m=4 n=2 r=4")
    assert dm.to_json()["params"] == {"m": 4, "n": 2, "r": 4}
    # e(-q) is the inverse of d, with conjugated labels
    for lam in dm.labels():
        for nu in dm.labels():
            total = fk.Poly()
            for kappa in dm.labels():
                ek = em.get(lam.conjugate(), kappa.conjugate())
                total = total + ek.substitute_neg_q() * dm.get(kappa, nu)
            assert total == fk.Poly("1" if lam == nu else "0"), (lam, nu, total)

    rep = e.verify("th2", 4, 2, 2)
    assert rep["failed"] == 0 and rep["checked"] > 0

    t = fk.KlTable(4)
    x = fk.AffinePerm.from_word([2], 4)
    w = fk.AffinePerm.from_word([2, 1, 3, 2], 4)
    assert t.p(x, w) == fk.Poly("1 + q")
    assert w.length() == 4 and (w * w.inverse()).length() == 0
    assert fk.AffinePerm.from_word([1], 3).act(3, [8, 3, 1]) == [3, 8, 1]

    try:
        fk.Partition("1,x")
    except ValueError:
        pass
    else:
        raise AssertionError("bad partition accepted")
    print("pyfockkl smoke test: ok")


if __name__ == "__main__":
    main()
