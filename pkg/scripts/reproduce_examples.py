#!/usr/bin/env python3
"""Run the documented CLI examples and compare them with their expected outputs.

Usage: python3 scripts/reproduce_examples.py
Exits non-zero if any example disagrees.
"""

import contextlib
import io
import json
import sys

from curvlab.cli import main

EXAMPLES = [
    (["identities", "--structure", "g2"], lambda d: d["results"]["count"] == 5 and set(d["results"]["residuals"].values()) == {0.0}),
    (["identities", "--structure", "su3"], lambda d: d["results"]["count"] == 17 and set(d["results"]["residuals"].values()) == {0.0}),
    (
        ["spectrum", "--space", "s3xs3", "--operator", "rring", "--subspace", "s2_minus"],
        lambda d: [(e["rational"], e["multiplicity"]) for e in d["results"]["eigenvalues"]] == [("-4", 2), ("2", 10)],
    ),
    (
        ["spectrum", "--space", "aw-su3xsu2", "--operator", "what", "--subspace", "omega2_14"],
        lambda d: d["results"]["eigenvalues"][0]["value"] == -19.2,
    ),
    (
        ["spectrum", "--space", "s3xs3", "--operator", "rhat", "--subspace", "omega2_full"],
        lambda d: [(e["rational"], e["multiplicity"]) for e in d["results"]["eigenvalues"]] == [("-7", 3), ("-2", 7), ("1", 5)],
    ),
    (
        ["bounds", "--theorem", "ring-einstein", "--n", "7", "--k", "10.8", "--delta", "0.2", "--Delta", "7.4"],
        lambda d: _interval(d) == (-9.4, 9.8),
    ),
    (["bounds", "--theorem", "hat-special", "--delta", "0", "--Delta", "2.25"], lambda d: _interval(d) == (-7.5, 3.0)),
    (["betti", "--space", "s3xs3", "--mode", "spectral"], lambda d: d["results"]["verdicts"] == {"b2": "zero", "b3": "no_conclusion"}),
    (
        ["betti", "--space", "s3xs3", "--mode", "sectional", "--delta", "0", "--Delta", "2.25"],
        lambda d: d["results"]["verdicts"]["b2"] == "zero",
    ),
    (
        ["betti", "--space", "aw-su3xsu2", "--mode", "spectral"],
        lambda d: d["results"]["verdicts"] == {"b2": "no_conclusion", "b3": "no_conclusion"},
    ),
]


def _interval(d):
    iv = d["results"]["intervals"][0]
    return round(iv["lo"], 10), round(iv["hi"], 10)


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv + ["--format", "json"])
    return code, json.loads(buf.getvalue())


def main_script() -> int:
    failures = 0
    for argv, check in EXAMPLES:
        code, data = run(argv)
        ok = code == 0 and check(data)
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} curvlab {' '.join(argv)}")
    # delta > Delta must be a usage error
    with contextlib.redirect_stderr(io.StringIO()):
        code = main(["bounds", "--theorem", "hat-special", "--delta", "3", "--Delta", "1"])
    failures += code != 1
    print(f"{'ok  ' if code == 1 else 'FAIL'} reversed pinching exits 1 (got {code})")
    print(f"{len(EXAMPLES) + 1 - failures}/{len(EXAMPLES) + 1} examples reproduced")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main_script())
