#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

import numpy as np
import pytest
from belieftree.utils import (
    ApproximationError,
    BeliefTreeException,
    ExcludedCaseError,
    NetworkParseError,
    NetworkValidationError,
    UnknownNodeError,
    helper,
    printer,
    runner,
)


def test_printer_callbacks_receive_every_message():
    messages = []

    def record(kind, data):
        messages.append((kind, data))

    printer.add_callback(record)
    try:
        printer.log("step")
        printer.warning("careful")
        NetworkParseError("bad document")
    finally:
        printer.remove_callback(record)
    assert messages == [("log", "step"), ("warning", "careful"), ("error", "bad document")]

    with pytest.raises(ValueError):
        printer.remove_callback(record)
    with pytest.raises(TypeError):
        printer.add_callback("not callable")


def test_printer_writes_to_standard_error(capsys):
    printer.display_color(False)
    printer.set_verbosity(printer.INFO_VERBOSITY)
    printer.info("summary")
    printer.log("hidden")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == "summary\n"
    assert printer.get_verbosity() == printer.INFO_VERBOSITY


@pytest.mark.parametrize(
    "error, status",
    [
        (BeliefTreeException("x"), 1),
        (NetworkValidationError("x"), 2),
        (ApproximationError("x"), 2),
        (ExcludedCaseError("x"), 3),
        (UnknownNodeError("x"), 4),
        (NetworkParseError("x", line=3, column=7), 4),
    ],
)
def test_exit_statuses(error, status):
    assert error.exit_status == status
    assert str(error).startswith("[BELIEFTREE ERROR]")


def test_parse_error_position():
    with pytest.raises(NetworkParseError) as error:
        helper.loads("{\n  \"a\": }", source="doc")
    assert (error.value.line, error.value.column) == (2, 8)
    assert "line 2, column 8" in error.value.message


def test_serialize_numpy_values():
    data = {"a": np.array([1.0, 2.5]), "b": np.int64(3), "c": (np.float64(0.1), np.bool_(True))}
    assert helper.serialize(data) == {"a": [1.0, 2.5], "b": 3, "c": [0.1, True]}
    assert helper.dumps(data) == '{"a": [1.0, 2.5], "b": 3, "c": [0.1, true]}'
    assert helper.deserialize({"a": [1, 2]})["a"].tolist() == [1.0, 2.0]
    with pytest.raises(ValueError):
        helper.dumps({"a": float("nan")})


def test_write_and_read_json(tmp_path):
    path = str(tmp_path / "doc.json")
    size = helper.write_json(path, {"x": [0.1, 0.2]})
    assert size == len('{"x": [0.1, 0.2]}')
    assert helper.read_json(path) == {"x": [0.1, 0.2]}
    with pytest.raises(NetworkParseError):
        helper.read_json(str(tmp_path / "missing.json"))


def test_require_fields():
    helper.require_fields({"n": 1}, {"n": int}, "doc")
    with pytest.raises(NetworkParseError):
        helper.require_fields({"n": True}, {"n": int}, "doc")
    with pytest.raises(NetworkParseError):
        helper.require_fields([], {"n": int}, "doc")


def test_run_concurrently_keeps_the_item_order():
    def square(value, offset=0):
        return value * value + offset

    assert runner.run_concurrently(square, range(8), offset=1) == [v * v + 1 for v in range(8)]
    assert runner.run_concurrently(square, []) == []


@pytest.mark.asyncio
async def test_gather_concurrently():
    results = await runner.gather_concurrently(lambda item, scale: item * scale, [1, 2, 3], 10)
    assert results == [10, 20, 30]
