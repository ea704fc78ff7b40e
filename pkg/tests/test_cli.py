import json
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from nafield.cli import run
from nafield.complex_ext import ComplexSeries
from nafield.parser import parse_complex, parse_series

TRANSCRIPTS = Path(__file__).parent / "golden" / "cli_transcripts.txt"


def load_transcripts():
    cases = []
    for block in TRANSCRIPTS.read_text().split("\n$ nafield "):
        block = block.removeprefix("$ nafield ")
        command, _, rest = block.partition("\n")
        body, _, code = rest.rpartition("[exit ")
        cases.append((command, body, int(code.strip().rstrip("]"))))
    return cases


CASES = load_transcripts()


def invoke(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("command, stdout, code", CASES, ids=[c[0] for c in CASES])
def test_golden_transcript(capsys, command, stdout, code):
    got_code, out, err = invoke(capsys, shlex.split(command))
    assert out == stdout
    assert got_code == code
    if code and "--json" not in command:
        assert err.startswith("error: ")


def test_every_command_is_covered():
    names = {"classify", "arith", "compare", "abs", "cclassify", "derive", "trace", "limit", "roots", "hyper", "support"}
    seen = {shlex.split(c)[0 if not c.startswith("--") else 1] for c, _, _ in CASES}
    assert names <= seen


def test_exit_codes_cover_success_domain_and_parse_errors():
    assert {code for _, _, code in CASES} == {0, 1, 2}


@pytest.mark.parametrize("command, stdout, code", [c for c in CASES if c[0].startswith("--json")])
def test_json_output_is_one_object(command, stdout, code):
    payload = json.loads(stdout)
    assert isinstance(payload, dict)
    if code:
        assert set(payload) == {"error", "detail"}


def test_json_series_values_reparse(capsys):
    _, out, _ = invoke(capsys, ["--json", "arith", "1 - t", "inv", "--trunc", "5"])
    value = parse_series(json.loads(out)["result"])
    _, text, _ = invoke(capsys, ["arith", "1 - t", "inv", "--trunc", "5"])
    assert value == parse_series(text.strip())
    _, out, _ = invoke(capsys, ["--json", "roots", "y^3 - t", "--trunc", "2", "--no-real-only"])
    roots = [parse_complex(r) for r in json.loads(out)["roots"]]
    assert all(isinstance(z, ComplexSeries) for z in roots) and len(roots) == 3


def test_json_classify_fields(capsys):
    _, out, _ = invoke(capsys, ["--json", "classify", "-1/2*t^{1/2}"])
    assert json.loads(out) == {"classification": "Infinitesimal", "valuation": "1/2", "sign": "negative"}


def test_parse_error_reports_byte_span(capsys):
    code, out, err = invoke(capsys, ["classify", "1 + t/??"])
    assert code == 2 and out == ""
    assert err.strip() == "error: UnexpectedToken: unexpected character '?' (bytes 6..7)"


def test_usage_error_exits_two(capsys):
    code, _, err = invoke(capsys, ["classify"])
    assert code == 2 and "required" in err


def test_global_flags_accepted_after_subcommand(capsys):
    assert invoke(capsys, ["arith", "1 - t", "inv", "--trunc", "2"])[1] == invoke(
        capsys, ["--trunc", "2", "arith", "1 - t", "inv"]
    )[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nafield", "classify", "2t^2 - 100t^3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "Infinitesimal (valuation 2), positive\n"
