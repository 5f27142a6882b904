import io

import pytest

from echelonmotion.echelon import echelonmotion
from echelonmotion.errors import ParseError
from echelonmotion.extensions import LinearExtension
from echelonmotion.poset import ElementBijection
from echelonmotion.serialize import (dumps_bijection, dumps_extension, dumps_poset, dumps_records,
                                     loads_bijection, loads_extension, loads_poset, loads_records,
                                     read_poset, write_poset, write_records)


def test_poset_roundtrip(r5, tmp_path):
    path = tmp_path / "r5.json"
    write_poset(r5, str(path))
    assert read_poset(str(path)) == r5
    assert loads_poset(dumps_poset(r5)).names == r5.names


def test_documented_format(r5):
    text = ('{"format":"poset-v1","n":5,"covers":[[0,1],[0,2],[1,3],[2,3],[3,4]],'
            '"names":["1","2","3","4","5"]}')
    assert loads_poset(text) == r5


def test_unreduced_covers_accepted(r5):
    text = '{"format":"poset-v1","n":5,"covers":[[0,1],[0,2],[1,3],[2,3],[3,4],[0,4]]}'
    assert loads_poset(text).covers == r5.covers


def test_extension_and_bijection(r5, sigma0):
    assert dumps_extension(sigma0) == "1,2,3,4,5"
    assert loads_extension("2,1,3") == LinearExtension((2, 1, 3))
    ech = echelonmotion(r5, sigma0)
    assert dumps_bijection(ech) == "5,3,2,1,4"
    assert loads_bijection("5,3,2,1,4") == ech
    assert loads_bijection(dumps_bijection(ElementBijection((1, 0)))) == ElementBijection((1, 0))


@pytest.mark.parametrize("text, where", [
    ('{"format":"poset-v1","n":2,', "line 1"),
    ('{"format":"poset-v2","n":2}', "format"),
    ('{"format":"poset-v1","n":-1}', "'n'"),
    ('{"format":"poset-v1","n":2,"covers":[[0]]}', "'covers'[0]"),
    ('{"format":"poset-v1","n":2,"covers":[[0,1],[1,0]]}', "covers"),
    ('{"format":"poset-v1","n":2,"names":["a"]}', "names"),
    ('[1, 2]', "object"),
])
def test_poset_parse_errors(text, where):
    with pytest.raises(ParseError, match=None) as exc:
        loads_poset(text)
    assert where in str(exc.value)


def test_csv_parse_errors():
    with pytest.raises(ParseError, match="field 2"):
        loads_extension("1,x,3")
    with pytest.raises(ParseError):
        loads_extension("1,1,3")
    with pytest.raises(ParseError):
        loads_bijection("1,1")


def test_records_roundtrip():
    records = [{"b": 1, "a": [1, 2]}, {"z": None}]
    text = dumps_records(records)
    assert text.splitlines()[0] == '{"a":[1,2],"b":1}'
    assert loads_records(text) == records
    buf = io.StringIO()
    write_records(records, buf)
    assert buf.getvalue() == text
    with pytest.raises(ParseError, match="line 2"):
        loads_records('{"a":1}\n{oops\n')
