from fractions import Fraction

import pytest

import expander_probe as ep


def test_build_and_measure_cycle():
    g = ep.build("cycle:n=8")
    assert (g.n, g.m) == (8, 8)
    report = ep.measure(g)
    assert report["girth"] == 8
    assert report["diameter"] == 4
    assert Fraction(report["h_exact_num"], report["h_exact_den"]) == Fraction(2, 3)


def test_exact_expansion_and_spectrum():
    value, witness = ep.cheeger_exact(ep.build("complete:n=4"))
    assert value == 3 and len(witness) == 1
    s = ep.spectrum(ep.build("petersen"))
    assert s["lambda2"] == pytest.approx(1 / 3)
    assert s["rho_star"] == pytest.approx(2 / 3)
    assert ep.girth(ep.build("petersen")) == 5
    assert ep.girth(ep.Graph(3, [(0, 1), (1, 2)])) is None


def test_percolation_is_coupled():
    g = ep.build("random-regular:n=30,d=4,seed=3")
    low = set(ep.percolate(g, 0.3, seed=5))
    high = set(ep.percolate(g, 0.7, seed=5))
    assert low <= high
    assert ep.percolate(g, 1.0, seed=5) == g.edges()
    value, ok = ep.condition_check(ep.build("complete:n=4"), 0.5)
    assert value == pytest.approx(0.5) and ok


def test_search_and_trim():
    g = ep.build("random-regular:n=40,d=4,seed=2")
    sub = ep.trim_to_girth(g, 6)
    assert ep.girth(sub) is None or ep.girth(sub) >= 6
    r = ep.search(g, girth=5, strategy="anneal", budget=200, seed=1)
    assert r["meets_target"]
    assert set(r["kept"]) <= set(g.edges())
    with pytest.raises(ValueError):
        ep.search(g)


def test_probe_and_cli():
    csv, report = ep.probe(["cycle:n=10"], [0.5], budget=100)
    assert csv.splitlines()[0].startswith("family,instance,n,m,d")
    assert report["records"][0]["success"]
    code, out, _ = ep.run_cli(["gen", "cycle:n=4"])
    assert code == 0 and out.splitlines()[0] == "4 4"
    code, _, err = ep.run_cli(["gen", "cycle"])
    assert code == 1 and "n" in err


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        ep.build("hypercube:n=3")
    with pytest.raises(ep.ComputationRefused):
        ep.cheeger_exact(ep.build("cycle:n=40"))
