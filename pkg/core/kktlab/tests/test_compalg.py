import json
import logging
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from kktlab.exceptions import KindMismatchError, UsageError
from kktlab.logic.compalg import (CompositionElement, CompositionKind,
                                  ca_conj, ca_mul, ca_norm, ca_real,
                                  doubling_table, table_as_strings)
from kktlab.logic.exactnum import ONE, ZERO, rat

GOLDEN = Path(__file__).resolve().parents[3] / "data" / "golden"


def random_element(rng, kind):
    return CompositionElement(kind, [rat(int(p), int(q)) for p, q in
                                     zip(rng.integers(-5, 6, kind.dim), rng.integers(1, 4, kind.dim))])


@pytest.mark.parametrize("tag", ["R", "C", "H", "O"])
def test_norm_is_multiplicative(tag):
    kind = CompositionKind(tag)
    rng = np.random.default_rng(11)
    for _ in range(25):
        x, y = random_element(rng, kind), random_element(rng, kind)
        assert ca_norm(x * y) == ca_norm(x) * ca_norm(y)


@pytest.mark.parametrize("tag", ["R", "C", "H", "O"])
def test_alternative_laws(tag):
    kind = CompositionKind(tag)
    rng = np.random.default_rng(12)
    for _ in range(25):
        x, y = random_element(rng, kind), random_element(rng, kind)
        assert x * (x * y) == (x * x) * y
        assert (y * x) * x == y * (x * x)


@pytest.mark.parametrize("tag", ["R", "C", "H", "O"])
def test_conjugate_gives_norm(tag):
    kind = CompositionKind(tag)
    x = random_element(np.random.default_rng(13), kind)
    prod = x * ca_conj(x)
    assert ca_real(prod) == ca_norm(x)
    assert all(c == ZERO for c in prod.coords[1:])


def test_imaginary_units_square_to_minus_one():
    kind = CompositionKind("O")
    minus_one = CompositionElement.basis(kind, 0).scale(-ONE)
    for i in range(1, 8):
        e = CompositionElement.basis(kind, i)
        assert ca_mul(e, e) == minus_one


def test_quaternions_associate_octonions_do_not():
    h = CompositionKind("H")
    for i, j, k in product(range(4), repeat=3):
        a, b, c = (CompositionElement.basis(h, t) for t in (i, j, k))
        assert (a * b) * c == a * (b * c)
    o = CompositionKind("O")
    e1, e2, e4 = (CompositionElement.basis(o, t) for t in (1, 2, 4))
    assert (e1 * e2) * e4 == -(e1 * (e2 * e4))


def test_octonion_table_matches_golden():
    golden = json.loads((GOLDEN / "octonion_table.json").read_text(encoding="utf-8"))
    assert table_as_strings(CompositionKind("O")) == golden["table"]


def test_kinds_are_checked():
    with pytest.raises(UsageError):
        CompositionKind("S")
    with pytest.raises(KindMismatchError):
        CompositionElement.basis(CompositionKind("C"), 1) * CompositionElement.basis(CompositionKind("H"), 1)
    assert CompositionKind("o") is CompositionKind("O")


def test_doubling_is_logged(caplog):
    doubling_table.cache_clear()
    with caplog.at_level(logging.DEBUG, logger="kktlab.logic.compalg"):
        table = doubling_table(4)
    assert len(table) == 4
    assert "doubled the 2-dimensional table to dimension 4" in caplog.text
    assert "doubled the 1-dimensional table to dimension 2" in caplog.text
