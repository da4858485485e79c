#!/usr/bin/env python3
"""End-to-end CLI checks: exit codes, file round trips, report determinism."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = sys.argv[1] if len(sys.argv) > 1 else "mtc-coset"
FAILURES = []


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def check(name, cond, extra=""):
    print(("ok   " if cond else "FAIL ") + name + ((" — " + extra) if extra and not cond else ""))
    if not cond:
        FAILURES.append(name)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="mtc_cli_"))

    # generate + validate
    r = run("generate", "su2", "--level", "2", "-o", str(tmp / "su22.json"))
    check("generate su2", r.returncode == 0, r.stderr)
    r = run("validate", str(tmp / "su22.json"))
    check("validate clean file exits 0", r.returncode == 0, r.stdout + r.stderr)

    r = run("generate", "minimal", "--p", "3", "--q", "4", "-o", str(tmp / "ising.json"))
    check("generate minimal", r.returncode == 0)
    r = run("generate", "pointed", "--n", "1", "--t", "0", "-o", str(tmp / "unit.json"))
    check("generate pointed rank 1", r.returncode == 0)
    r = run("generate", "pointed", "--n", "4", "--t", "2", "-o", str(tmp / "bad.json"))
    check("degenerate pointed form exits 2", r.returncode == 2, str(r.returncode))

    # invalid parameters exit nonzero with a message
    r = run("generate", "su2", "--level", "-3", "-o", str(tmp / "x.json"))
    check("invalid level rejected", r.returncode != 0)

    # tampered twist -> exit 1
    data = json.loads((tmp / "ising.json").read_text())
    data["twists"][2] = [1.0, 0.0]
    (tmp / "tampered.json").write_text(json.dumps(data))
    r = run("validate", str(tmp / "tampered.json"))
    check("tampered twist exits 1", r.returncode == 1, str(r.returncode))

    # truncated file -> exit 2
    (tmp / "broken.json").write_text((tmp / "ising.json").read_text()[:40])
    r = run("validate", str(tmp / "broken.json"))
    check("truncated file exits 2", r.returncode == 2, str(r.returncode))

    # product + solver + analyze
    r = run("generate", "su2", "--level", "1", "-o", str(tmp / "su21.json"))
    r = run("product", str(tmp / "su21.json"), str(tmp / "su21.json"), "-o", str(tmp / "amb.json"))
    check("product", r.returncode == 0, r.stderr)
    r = run("coset", "solve-branching", str(tmp / "su22.json"), str(tmp / "ising.json"),
            str(tmp / "amb.json"), "--bound", "2", "-o", str(tmp / "sols.json"))
    check("solve-branching exits 0", r.returncode == 0, r.stderr)
    check("solver reports one solution", "solutions: 1" in r.stdout, r.stdout)

    sols = json.loads((tmp / "sols.json").read_text())
    (tmp / "system.json").write_text(json.dumps(sols["solutions"][0]))
    r = run("coset", "analyze", str(tmp / "system.json"),
            "--markdown", str(tmp / "report.md"), "--json", str(tmp / "report.json"))
    check("analyze clean system exits 0", r.returncode == 0, r.stdout[-400:] + r.stderr)
    report = json.loads((tmp / "report.json").read_text())
    check("analyze json reports pass", report["pass"] is True)
    check("markdown written", (tmp / "report.md").read_text().startswith("# coset analysis"))

    # deterministic reports
    r2 = run("coset", "analyze", str(tmp / "system.json"), "--json", str(tmp / "report2.json"))
    check("reports are deterministic",
          (tmp / "report.json").read_text() == (tmp / "report2.json").read_text())

    # zero-solution triple
    r = run("coset", "solve-branching", str(tmp / "su22.json"), str(tmp / "ising.json"),
            str(tmp / "su21.json"), "--bound", "2")
    check("inconsistent triple exits 0 with count 0",
          r.returncode == 0 and "solutions: 0" in r.stdout, r.stdout)

    # spectral verify
    r = run("spectral", "verify", str(tmp / "system.json"))
    check("spectral verify exits 0", r.returncode == 0, r.stdout[-400:] + r.stderr)

    # tampered system -> exit 1 (assumption violation)
    system = json.loads((tmp / "system.json").read_text())
    system["c1"]["twists"][2] = [1.0, 0.0]
    (tmp / "badsys.json").write_text(json.dumps(system))
    r = run("coset", "analyze", str(tmp / "badsys.json"))
    check("tampered system exits 1", r.returncode == 1, str(r.returncode))

    # MTC_COSET_EPS is honored (absurdly tight tolerance makes validate fail)
    import os
    env = dict(os.environ, MTC_COSET_EPS="1e-18")
    r = subprocess.run([CLI, "validate", str(tmp / "su22.json")],
                       capture_output=True, text=True, env=env)
    check("MTC_COSET_EPS override", r.returncode == 1, str(r.returncode))

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
