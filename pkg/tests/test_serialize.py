import pytest

from pentagon.constructions import kac_takesaki
from pentagon.errors import NotAssociative, P1Violation, SchemaError
from pentagon.named import cyclic, symmetric3
from pentagon.serialize import (
    dumps,
    load,
    read_solution_parts,
    save,
    semigroup_from_json,
    semigroup_to_json,
    solution_from_json,
    solution_to_json,
)


def test_roundtrip_is_byte_identical(tmp_path):
    s = kac_takesaki(symmetric3())
    path = tmp_path / "s.json"
    save(path, solution_to_json(s))
    first = path.read_text()
    back = solution_from_json(load(path))
    assert back == s
    save(path, solution_to_json(back))
    assert path.read_text() == first
    assert first.count("\n") == 6


def test_semigroup_roundtrip():
    S = cyclic(3)
    assert semigroup_from_json(semigroup_to_json(S)) == S


@pytest.mark.parametrize(
    "doc, pointer",
    [
        ({"table": [[0, 1], [1, 0]]}, "/theta"),
        ({"table": [[0, 1], [1, 0]], "theta": [[0, 1]]}, "/theta"),
        ({"table": [[0, 1], [1, 0]], "theta": [[0, 1], [0, 2]]}, "/theta/1/1"),
        ({"table": [[0, 1], [1, 0]], "theta": [[0, 1], [0, "1"]]}, "/theta/1/1"),
        ({"order": 3, "table": [[0, 1], [1, 0]], "theta": [[0, 1], [0, 1]]}, "/table"),
        ({"order": 0, "table": [[0]], "theta": [[0]]}, "/order"),
        ({"table": [[0, 1], [1]], "theta": [[0, 1], [0, 1]]}, "/table/1"),
        ([], "/"),
    ],
)
def test_schema_errors_carry_pointer(doc, pointer):
    with pytest.raises(SchemaError) as info:
        solution_from_json(doc)
    assert info.value.path == pointer


def test_semantic_errors_are_not_schema_errors():
    with pytest.raises(NotAssociative):
        semigroup_from_json({"table": [[1, 0], [0, 0]]})
    with pytest.raises(P1Violation):
        solution_from_json({"table": [[0, 1], [1, 0]], "theta": [[0, 1], [0, 0]]})
    S, theta = read_solution_parts({"table": [[0, 1], [1, 0]], "theta": [[0, 1], [0, 0]]})
    assert theta == [[0, 1], [0, 0]]


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(SchemaError):
        load(p)


def test_dumps_layout():
    assert dumps({"a": [[1, 2]], "b": True}) == '{\n  "a": [[1, 2]],\n  "b": true\n}\n'
    assert dumps([]) == "[]\n"
