import warnings

import pytest

from ramcert.arrangement import hirzebruch_check, incidence, pair_count_holds
from ramcert.catalog import (
    CATALOG,
    EXCEPTIONAL,
    build,
    ceva,
    exceptional,
    extended_ceva,
    generic_random,
    pencil,
    triangle,
)
from ramcert.errors import InvalidParameters, UnknownName


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_entry_reproduces_signature(name):
    assert CATALOG[name].verify()


def test_ceva_examples():
    assert incidence(ceva(3)).signature() == {3: 12}
    assert incidence(ceva(4)).signature() == {3: 16, 4: 3}
    with pytest.warns(UserWarning):
        arr = ceva(2)
    assert len(arr.lines) == 6 and arr.notes
    inc = incidence(arr)
    coord = [p for p in inc.points if sum(1 for c in p.point.coords if c.is_zero()) == 2]
    assert len(coord) == 3 and all(p.multiplicity == 2 for p in coord)
    for bad in (1, 0, -3, 2.5):
        with pytest.raises(InvalidParameters):
            ceva(bad)


@pytest.mark.parametrize("m", range(3, 9))
def test_ceva_hirzebruch(m):
    arr = ceva(m)
    inc = incidence(arr)
    hz = hirzebruch_check(arr, inc)
    assert hz.holds and hz.n == m
    for pts in inc.per_line:
        mults = sorted(inc.points[i].multiplicity for i in pts)
        assert mults == sorted([3] * m + [m])


def test_extended_ceva_examples():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert len(extended_ceva(2).lines) == 9
    arr = extended_ceva(3)
    assert len(arr.lines) == 12
    hz = hirzebruch_check(arr)
    assert hz.holds and hz.n == 4
    assert len(extended_ceva(4).lines) == 15


@pytest.mark.parametrize("name,lines,n", [("klein", 21, 7), ("icosahedral", 15, 5), ("valentiner", 45, 15),
                                          ("hesse", 12, 4), ("hesse_extended", 21, 7)])
def test_exceptional(name, lines, n):
    arr = exceptional(name)
    hz = hirzebruch_check(arr)
    assert len(arr.lines) == lines and hz.holds and hz.n == n


def test_exceptional_fields():
    assert exceptional("icosahedral").field_order == 5
    assert exceptional("klein").field_order == 7
    assert exceptional("hesse").field_order == 3
    assert exceptional("valentiner").field_order == 15


def test_aliases():
    assert set(EXCEPTIONAL.values()) == {"G23", "G24", "G25", "G26", "G27"}
    assert build("G24").lines == build("klein").lines
    assert build("hesse_family").lines == build("hesse").lines
    with pytest.raises(UnknownName):
        exceptional("e8")
    with pytest.raises(UnknownName):
        build("nothing")


def test_simple_generators():
    assert incidence(triangle()).signature() == {2: 3}
    assert incidence(pencil(4)).signature() == {4: 1}
    for seed in range(5):
        inc = incidence(generic_random(5, seed))
        assert inc.signature() == {2: 10} and pair_count_holds(inc)
    assert generic_random(5, 3).lines == generic_random(5, 3).lines
    assert build("generic5_seed3").lines == generic_random(5, 3).lines
