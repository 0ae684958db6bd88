"""End-to-end checks of the markoff-teich command line interface."""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = 0


def run(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("MARKOFF_TEICH_PRECISION", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


def check(cond, msg):
    global failures
    if not cond:
        failures += 1
        print("FAIL:", msg)


def main():
    # markoff enumeration
    r = run("markoff", "--max-z", "250")
    check(r.returncode == 0, "markoff exit code")
    data = json.loads(r.stdout)
    check(data["schema"] == 1, "markoff schema")
    maxima = [int(t["z"]) for t in data["triples"]]
    check(maxima == [1, 2, 5, 13, 29, 34, 89, 169, 194, 233], "markoff maxima multiset")

    r = run("markoff", "--max-z", "1")
    data = json.loads(r.stdout)
    check([ (int(t["x"]), int(t["y"]), int(t["z"])) for t in data["triples"] ] == [(1, 1, 1)],
          "markoff max-z 1")

    # product verification on the modular torus
    r = run("verify-product", "--triple", "3,3,3", "--max-height", "30", "--precision", "256")
    check(r.returncode == 0, "verify-product exit 0")
    rep = json.loads(r.stdout)
    check(rep["schema"] == 1, "report schema")
    check(rep["monotone"] is True, "monotone flag")
    check(float(rep["residual"]) < 1e-6, "residual below threshold")
    check(abs(float(rep["target"]) - 17.9442719099991588) < 1e-12, "closed-form target")

    # byte-identical reruns
    r2 = run("verify-product", "--triple", "3,3,3", "--max-height", "30", "--precision", "256")
    check(r.stdout == r2.stdout, "deterministic output")

    # completion branch reproduces the printed c to its consistency limit
    r = run("verify-product", "--complete", "2.59740058623,4.18711171215,plus",
            "--max-height", "30", "--threshold", "1e-5")
    check(r.returncode == 0, "verify-product --complete exit 0")
    rep = json.loads(r.stdout)
    check(rep["base"]["c"].startswith("7.738087849434723"), "completed c digits")

    # degenerate and invalid triples exit 2
    r = run("verify-product", "--triple", "2,2,2")
    check(r.returncode == 2, "degenerate triple exit 2")
    r = run("verify-mcshane", "--triple", "3,3,5")
    check(r.returncode == 2, "Markoff violation exit 2")
    r = run("verify-product", "--complete", "2.1,2.1,plus")
    check(r.returncode == 2, "no hyperbolic torus exit 2")

    r = run("verify-product", "--triple", "3,3,3", "--max-height", "0")
    check(r.returncode == 2, "max-height 0 exit 2")
    r = run("markoff", "--max-z", "0")
    check(r.returncode == 2, "max-z 0 exit 2")
    r = run("verify-product", "--triple", "3,3,3", "--precision", "32")
    check(r.returncode == 2, "precision below 64 exit 2")

    # threshold miss is exit 1 (not a domain error)
    r = run("verify-mcshane", "--triple", "3,3,3", "--max-height", "1")
    check(r.returncode == 1, "unconverged run exit 1")
    rep = json.loads(r.stdout)
    check(abs(float(rep["partial"]) - 0.3819660112501052) < 1e-12, "mcshane h=1 partial")

    # mcshane converged
    r = run("verify-mcshane", "--triple", "3,3,3", "--max-height", "30")
    check(r.returncode == 0, "verify-mcshane exit 0")
    check(abs(float(json.loads(r.stdout)["target"]) - 0.5) == 0.0, "mcshane target 1/2")

    # env fallback for precision
    r = run("verify-product", "--triple", "3,3,3", "--max-height", "10",
            env_extra={"MARKOFF_TEICH_PRECISION": "128"})
    check(json.loads(r.stdout)["precision_bits"] == 128, "env precision fallback")

    # emit-F in CSV: fixed columns, endpoint rows carry one derivative each
    r = run("emit-F", "--triple", "3,3,3", "--max-q", "5", "--format", "csv")
    lines = r.stdout.strip().split("\n")
    check(lines[0] == "curve_p,curve_q,sector,height,trace,length,value,aux1,aux2",
          "csv header")
    first = lines[1].split(",")
    last = lines[-1].split(",")
    check(first[0] == "0" and first[1] == "1" and first[7] == "" and first[8] != "",
          "0/1 row carries only rho")
    check(last[0] == "1" and last[1] == "1" and last[7] != "" and last[8] == "",
          "1/1 row carries only lambda")
    check(len(lines) == 1 + 2 + 9, "emit-F row count at max_q 5: header + endpoints + interior")

    # emit-f: boundary values and negative jumps
    r = run("emit-f", "--triple", "3,3,3", "--max-q", "5")
    rows = json.loads(r.stdout)["rows"]
    check(abs(float(rows[0]["f"]) - 1.0 / 3.0) < 1e-15, "f(0/1) = c/(ab)")
    check(abs(float(rows[-1]["f"])) < 1e-70, "f(1/1) = 0")
    check(all(float(x["jump"]) < 0 for x in rows), "all jumps negative")

    # emit-unitball counts and reflection
    r = run("emit-unitball", "--triple", "3,3,3", "--max-height", "1")
    check(len(json.loads(r.stdout)["rows"]) == 3, "unit ball h<=1 fundamental")
    r = run("emit-unitball", "--triple", "3,3,3", "--max-height", "1", "--reflect")
    check(len(json.loads(r.stdout)["rows"]) == 6, "unit ball h<=1 reflected")

    # --out writes the same bytes as stdout
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "report.json")
        r = run("verify-product", "--triple", "3,3,3", "--max-height", "5", "--out", path)
        with open(path) as f:
            content = f.read()
        r2 = run("verify-product", "--triple", "3,3,3", "--max-height", "5")
        check(content == r2.stdout, "--out matches stdout bytes")

    # pair rotation accepted
    for pair in ("ab", "bc", "ca"):
        r = run("emit-F", "--triple", "3,3,3", "--max-q", "3", "--pair", pair)
        check(r.returncode == 0, f"emit-F pair {pair}")

    if failures:
        print(f"{failures} CLI checks failed")
        sys.exit(1)
    print("cli ok")


if __name__ == "__main__":
    main()
