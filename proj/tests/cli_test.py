"""End-to-end checks of the reebcat command-line tool."""

import pathlib
import subprocess
import sys
import tempfile

CLI = sys.argv[1]
DATA = pathlib.Path(sys.argv[2])
failures = []


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


def check(name, ok, detail=""):
    print(("PASS " if ok else "FAIL ") + name + ("" if ok else ": " + detail))
    if not ok:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)

    r = run("smooth", DATA / "loop.rg", "--epsilon", "1/2", "--reduce", "-o", tmp / "u.rg")
    check("smooth loop exits 0", r.returncode == 0, r.stderr)
    r = run("validate", tmp / "u.rg", "--print")
    lines = r.stdout.splitlines()
    check("smoothed loop validates", r.returncode == 0, r.stderr)
    check("smoothed loop is LINE(-1/2, 3/2)",
          lines[0] == "criticals -1/2 3/2"
          and sum(l.startswith("vertex") for l in lines) == 2
          and sum(l.startswith("edge") for l in lines) == 1, r.stdout)

    r = run("smooth", DATA / "fork.rg", "--epsilon", "1/4", "--algo", "naive", "--emit-zeta", tmp / "z.txt")
    s = run("smooth", DATA / "fork.rg", "--epsilon", "1/4")
    check("naive and sweep agree on fork", r.returncode == 0 and r.stdout == s.stdout, r.stderr)
    check("zeta written", (tmp / "z.txt").read_text().startswith("vertex"))

    r = run("distance", DATA / "line.rg", DATA / "line.rg", "--tol", "1/64")
    check("line vs line bracket", r.returncode == 0 and r.stdout.splitlines()[0] == "[0, 1/64]", r.stdout)

    r = run("distance", DATA / "twolines.rg", DATA / "twolines.rg", "--tol", "1/4",
            "--emit-alpha", tmp / "a.txt", "--emit-beta", tmp / "b.txt")
    check("two lines bracket", r.returncode == 0 and r.stdout.startswith("[0, 1/4]"), r.stdout)
    r = run("check-interleave", DATA / "twolines.rg", DATA / "twolines.rg", "--epsilon", "1/4",
            "--alpha", tmp / "a.txt", "--beta", tmp / "b.txt")
    check("witness verifies", r.returncode == 0, r.stderr)
    beta = (tmp / "b.txt").read_text().replace(".1", ".0")
    (tmp / "bad.txt").write_text(beta)
    r = run("check-interleave", DATA / "twolines.rg", DATA / "twolines.rg", "--epsilon", "1/4",
            "--alpha", tmp / "a.txt", "--beta", tmp / "bad.txt")
    check("corrupted beta exits 1", r.returncode == 1, str(r.returncode))
    check("corrupted beta names a cell", "cell" in r.stderr, r.stderr)

    r = run("distance", DATA / "loop.rg", DATA / "line.rg", "--tol", "1/64", "--budget", "3")
    check("budget exhaustion exits 2", r.returncode == 2, str(r.returncode))

    r = run("distance", DATA / "twolines.rg", DATA / "line.rg", "--tol", "1/4")
    check("component mismatch is infinite", r.stdout.strip() == "infinite", r.stdout)

    r = run("reeb", DATA / "triangle.field")
    check("reeb of triangle", r.returncode == 0 and r.stdout.count("\nedge") == 4, r.stdout)

    r = run("cosheaf-eval", DATA / "loop.rg", "--interval", "-inf,inf")
    check("cosheaf on the whole line", r.returncode == 0 and "1 component" in r.stdout, r.stdout)
    r = run("cosheaf-eval", DATA / "loop.rg", "--interval", "1/4,3/4")
    check("cosheaf inside the loop", r.returncode == 0 and "2 components" in r.stdout, r.stdout)

    r = run("export-dot", DATA / "fork.rg")
    check("dot matches golden", r.stdout == (DATA / "fork.dot").read_text())

    (tmp / "broken.rg").write_text("vertex a 0\nedge e a missing\n")
    r = run("validate", tmp / "broken.rg")
    check("broken document exits 1 with line", r.returncode == 1 and "line 2" in r.stderr, r.stderr)
    r = run("smooth", DATA / "line.rg", "--epsilon", "abc")
    check("bad epsilon exits 1", r.returncode == 1, r.stderr)
    r = run("validate")
    check("usage error is nonzero", r.returncode != 0)

sys.exit(1 if failures else 0)
