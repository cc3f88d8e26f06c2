"""Rewrite the golden outputs from the current implementation.

Only run this after reviewing a deliberate output change; the goldens are
the byte-exact reference for the CLI tests.
"""

import shlex
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).parent
CLI = HERE / "cli"


def run_case(cmd_file: Path):
    command, exit_line = cmd_file.read_text().splitlines()[:2]
    argv = shlex.split(command)[1:]
    proc = subprocess.run(
        [sys.executable, "-m", "wittkit", *argv], cwd=CLI, capture_output=True, text=True
    )
    return proc, int(exit_line.split()[1])


def main():
    for cmd_file in sorted(CLI.glob("*.cmd")):
        proc, code = run_case(cmd_file)
        if proc.returncode != code:
            sys.exit(f"{cmd_file.name}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
        cmd_file.with_suffix(".out").write_text(proc.stdout)
    from wittkit import run_suite, format_report

    reports = run_suite(16, 3, ["B2", "B4"])
    (HERE / "suite_b2_b4.txt").write_text("".join(format_report(r) + "\n" for r in reports))


if __name__ == "__main__":
    main()
