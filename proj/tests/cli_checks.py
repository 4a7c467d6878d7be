#!/usr/bin/env python3
"""End-to-end checks of the crflat command line tool.

Usage: cli_checks.py <path-to-binary> <path-to-report-schema>

Covers exit code semantics (0 success, 1 usage/input error, 2 negative
finding), schema validity of every JSON report, and byte-identical output
on repeated invocations.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
SCHEMA = json.loads(Path(sys.argv[2]).read_text())

try:
    import jsonschema
except ImportError:  # environments without the validator still check structure
    jsonschema = None

failures = []


def run(*args, expect):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        failures.append(f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
                        f"stderr: {proc.stderr.strip()}")
    return proc.stdout


def check_json(label, text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: invalid JSON: {e}")
        return None
    if jsonschema is not None:
        try:
            jsonschema.validate(doc, SCHEMA)
        except jsonschema.ValidationError as e:
            failures.append(f"{label}: schema violation: {e.message}")
    return doc


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    cubic = tmp / "cubic.json"
    hy2 = tmp / "hy2.json"

    # example manifests
    out = run("example", "cubic_nonminimal", "--param", "lambda1=0", "--param", "lambda2=1/4",
              "--param", "mu1=1", "--param", "mu2=2", expect=0)
    check_json("example cubic", out)
    cubic.write_text(out)

    out = run("example", "hy2_obstruction", "--param", "b22=1", "--out", str(hy2), expect=0)
    check_json("example hy2 --out", out)

    run("example", "no_such_fixture", expect=1)

    # invariants
    doc = check_json("invariants", run("invariants", str(cubic), expect=0))
    if doc and [b["class"] for b in doc["bishop"]] != ["elliptic", "elliptic"]:
        failures.append("invariants: expected two elliptic invariants")

    # nonminimal: cubic passes, the obstructed example is a finding
    doc = check_json("nonminimal cubic", run("nonminimal", str(cubic), expect=0))
    if doc and not doc["nonminimal"]:
        failures.append("nonminimal cubic: expected nonminimal = true")
    doc = check_json("nonminimal hy2", run("nonminimal", str(hy2), expect=2))
    if doc and doc["nonminimal"]:
        failures.append("nonminimal hy2: expected nonminimal = false")

    # flatten: success vs obstruction, plus --emit-transform
    transform = tmp / "transform.json"
    doc = check_json("flatten cubic",
                     run("flatten", str(cubic), "--to", "6",
                         "--emit-transform", str(transform), expect=0))
    if doc and doc["outcome"] != "flattened":
        failures.append("flatten cubic: expected flattened")
    check_json("emitted transform", transform.read_text())

    doc = check_json("flatten hy2", run("flatten", str(hy2), "--to", "4", expect=2))
    if doc:
        if doc["outcome"] != "obstructed" or doc["order"] != 4:
            failures.append("flatten hy2: expected obstructed at order 4")
        witness = {(tuple(t["alpha"]), tuple(t["beta"])) for t in doc.get("obstruction", [])}
        if ((2, 0), (0, 2)) not in witness:
            failures.append("flatten hy2: obstruction lacks the z1^2 zb2^2 monomial")

    # rigidity
    doc = check_json("rigidity", run("rigidity", "--n", "2", "--lambda", "1/8",
                                     "--lambda", "1/4", "--degree", "4", expect=0))
    if doc and doc["dimension"] != 0:
        failures.append("rigidity: expected trivial kernel")

    # all-parabolic invariants: a finding, not an error
    doc = check_json("rigidity parabolic",
                     run("rigidity", "--n", "2", "--lambda", "1/2", "--lambda", "1/2",
                         "--degree", "3", expect=2))
    if doc and doc["applicable"]:
        failures.append("rigidity parabolic: expected applicable = false")

    # determinants
    doc = check_json("det S", run("det", "--kind", "S", "--mhat", "1", expect=0))
    if doc and doc["det"] != "2":
        failures.append("det S mhat 1: expected 2")
    doc = check_json("det Rplus", run("det", "--kind", "Rplus", "--mhat", "2", expect=0))
    if doc and not doc["factored"]["ok"]:
        failures.append("det Rplus mhat 2: factorization should verify")
    doc = check_json("det N at xi", run("det", "--kind", "N", "--mhat", "2",
                                        "--xi", "1/2", expect=0))
    if doc and not doc["nonsingular_at_xi"]:
        failures.append("det N at 1/2: expected nonsingular")
    # det Rplus vanishes at xi = 1: a finding
    check_json("det Rplus at 1", run("det", "--kind", "Rplus", "--mhat", "2", "--xi", "1",
                                     expect=2))

    # selftest
    doc = check_json("selftest", run("selftest", "--max-degree", "3", expect=0))
    if doc and not doc["all_pass"]:
        failures.append("selftest: expected all checks to pass")

    # usage and input errors
    run("flatten", expect=1)                      # missing arguments
    run("flatten", str(tmp / "missing.json"), "--to", "4", expect=1)
    bad = tmp / "bad.json"
    bad.write_text('{"n": 2, "order": 8, "lambda": ["0", "0"], '
                   '"E": [{"alpha": [2, 1], "beta": [0, 0], "re": "1", "im": "0"}]}')
    run("invariants", str(bad), expect=1)         # non-Hermitian data rejected

    # byte-identical reports on repeated runs
    for args in (["flatten", str(hy2), "--to", "4"],
                 ["rigidity", "--n", "2", "--lambda", "0", "--lambda", "1/4", "--degree", "3"],
                 ["det", "--kind", "T", "--mhat", "3"],
                 ["example", "appendix_random", "--param", "seed=9"]):
        expect = 2 if args[0] == "flatten" else 0
        first = run(*args, expect=expect)
        second = run(*args, expect=expect)
        if first != second:
            failures.append(f"{' '.join(args)}: output not byte-identical across runs")

if failures:
    print("CLI checks FAILED:")
    for f in failures:
        print(" -", f)
    sys.exit(1)

print("CLI checks passed" + ("" if jsonschema else " (jsonschema module unavailable, structure only)"))
