import random

import pytest

from config import LimitExceeded
from tl import (Pairing, adjoint, brute_force_diagrams, cap_at, catalan, classify, compose, enumerate_diagrams,
                factorize, glue, identity, innermost_turnbacks, juxtapose, outermost_turnbacks, validate,
                verify_counts)

CAP = Pairing.from_text("2→0:{(B1,B2)}")
CUP = Pairing.from_text("0→2:{(T1,T2)}")
E = Pairing.from_text("2→2:{(B1,B2),(T1,T2)}")
EMPTY = Pairing(0, 0, ())


@pytest.mark.parametrize("text,expected", [
    ("2→2:{(B1,T1),(B2,T2)}", True),
    ("2→2:{(B1,T2),(B2,T1)}", False),
    ("2→0:{(B1,B2)}", True),
    ("4→0:{(B1,B3),(B2,B4)}", False),
])
def test_validate(text, expected):
    assert validate(Pairing.from_text(text)) is expected


def test_identity_text_form():
    assert identity(2).to_text() == "2→2:{(B1,T1),(B2,T2)}"
    assert Pairing.from_text("2->2:{(B1,T1),(B2,T2)}") == identity(2)


@pytest.mark.parametrize("bad", ["2→2:{(B1,T1)}", "2→2:{(B1,T1),(B1,T2)}", "2→2:{(B1,T3),(B2,T1)}", "cap"])
def test_from_text_rejects(bad):
    with pytest.raises(ValueError):
        Pairing.from_text(bad)


def test_compose_closes_loop():
    assert compose(CUP, CAP) == (EMPTY, 1)


def test_compose_e_twice():
    assert compose(E, E) == (E, 1)
    assert compose(identity(2), E) == (E, 0)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(CAP, CAP)


def test_juxtapose():
    assert juxtapose(CAP, CAP) == Pairing.from_text("4→0:{(B1,B2),(B3,B4)}")
    assert juxtapose(identity(2), CAP) == Pairing.from_text("4→2:{(B1,T1),(B2,T2),(B3,B4)}")
    assert juxtapose(EMPTY, E) == E


def test_adjoint():
    assert adjoint(CAP) == CUP
    assert adjoint(identity(3)) == identity(3)
    d = Pairing.from_text("4→2:{(B1,T1),(B2,B3),(B4,T2)}")
    assert adjoint(adjoint(d)) == d


@pytest.mark.parametrize("p,expected", [
    (identity(2), (True, True, True)),
    (E, (False, False, False)),
    (Pairing.from_text("6→2:{(B1,B4),(B2,B3),(B5,T1),(B6,T2)}"), (True, False, False)),
])
def test_classify(p, expected):
    assert tuple(classify(p)) == expected


def test_factorize():
    assert factorize(E) == (CAP, CUP)
    assert factorize(identity(2)) == (identity(2), identity(2))
    d = Pairing.from_text("4→2:{(B1,B2),(B3,T1),(B4,T2)}")
    assert factorize(d) == (d, identity(2))


@pytest.mark.parametrize("b,t,filter_name,count", [
    (4, 0, "all", 2),
    (4, 2, "epi", 3),
    (6, 2, "non_nested_epi", 6),
    (6, 0, "all", 5),
])
def test_enumerate_counts(b, t, filter_name, count):
    found = enumerate_diagrams(b, t, filter_name)
    assert len(found) == count
    assert list(found) == sorted(found)
    assert all(validate(p) for p in found)


def test_enumerate_rejects_odd_and_unknown_filter():
    with pytest.raises(ValueError):
        enumerate_diagrams(3, 0)
    with pytest.raises(ValueError):
        enumerate_diagrams(2, 0, "monic")


def test_enumerate_limit():
    with pytest.raises(LimitExceeded):
        enumerate_diagrams(26, 0)


@pytest.mark.parametrize("p,inner,outer", [
    (identity(2), 0, 0),
    (Pairing.from_text("4→0:{(B1,B4),(B2,B3)}"), 1, 1),
    (Pairing.from_text("4→0:{(B1,B2),(B3,B4)}"), 2, 2),
])
def test_turnbacks(p, inner, outer):
    assert innermost_turnbacks(p) == inner
    assert outermost_turnbacks(p) == outer


def test_cap_at():
    assert cap_at(2, 1) == CAP
    assert cap_at(4, 2) == Pairing.from_text("4→2:{(B1,T1),(B2,B3),(B4,T2)}")
    with pytest.raises(ValueError):
        cap_at(2, 2)


def test_glue_reports_dangling_point():
    with pytest.raises(ValueError):
        glue([(1, 0)], [], [(0, 0)])


def test_catalan():
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_verify_counts_small():
    report = verify_counts(pmax=3, ijmax=3, factor_max=6)
    assert report.passed
    assert report.cases > 0


@pytest.mark.slow
def test_verify_counts_full():
    assert verify_counts().passed


@pytest.mark.parametrize("seed", range(5))
def test_compose_is_associative_with_loops(seed):
    rng = random.Random(seed)
    for _ in range(60):
        b, m1, m2, t = (2 * rng.randint(0, 3) for _ in range(4))
        lower = rng.choice(enumerate_diagrams(b, m1))
        middle = rng.choice(enumerate_diagrams(m1, m2))
        upper = rng.choice(enumerate_diagrams(m2, t))
        first, loops_a = compose(lower, middle)
        left, loops_b = compose(first, upper)
        second, loops_c = compose(middle, upper)
        right, loops_d = compose(lower, second)
        assert (left, loops_a + loops_b) == (right, loops_c + loops_d)


@pytest.mark.parametrize("b,t", [(0, 0), (4, 2), (2, 4), (6, 0), (4, 4)])
def test_enumeration_matches_brute_force(b, t):
    for name in ("all", "epi", "non_nested_epi"):
        assert enumerate_diagrams(b, t, name) == brute_force_diagrams(b, t, name)


def test_brute_force_sees_crossings():
    # 3 matchings of 4 points, one of them crossing
    assert len(brute_force_diagrams(4, 0)) == 2
    assert len(brute_force_diagrams(2, 2)) == 2
