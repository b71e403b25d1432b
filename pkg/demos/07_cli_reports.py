"""
Config files, the ``ifn`` command and JSON reports
==================================================

Everything above is also reachable from the shell:

    ifn derivative --config square.cfg --out square.json

This script drives the same entry point in-process, inspects the report and
re-runs it from the report itself (reports embed their resolved config).
"""

import json
import os
import tempfile

from ifnderiv.cli import main

work = tempfile.mkdtemp(prefix="ifn-demo-")
cfg = os.path.join(work, "square.cfg")
with open(cfg, "w") as fh:
    fh.write("# derivative of x^2 at 1\n"
             "f = square\n"
             "x0 = 1\n"
             "candidate = 2\n"
             "t_grid = [0.1, 1, 10]\n")

out = os.path.join(work, "square.json")
status = main(["derivative", "--config", cfg, "--out", out])
print("exit status:", status)

with open(out) as fh:
    doc = json.load(fh)
print("schema   :", doc["schema"])
print("verdict  :", doc["verdict"])
print("params   :", {k: doc["params"][k] for k in ("schedule", "t_grid", "alpha", "seed")})
print("profiles :", [p["label"] for p in doc["profiles"]])

# a report is itself a valid config: re-running gives identical bytes
again = os.path.join(work, "again.json")
main(["derivative", "--config", out, "--out", again])
print("byte-identical rerun:", open(out).read() == open(again).read())

# command-line overrides: a tighter alpha, then a broken value (exit 2)
print("\nalpha = 1e-9 ->", main(["derivative", "--config", cfg, "--alpha", "1e-9", "--out", again]), flush=True)
with open(cfg, "a") as fh:
    fh.write("alpha = 1.5\n")
print("alpha = 1.5  ->", main(["derivative", "--config", cfg]))

# the registry of named functions usable in configs
print()
main(["list"])
