"""Regenerate the CLI golden outputs listed in tests/golden/commands.json.

Run from anywhere; commands execute with the repository root as working
directory so relative data paths resolve.  Exits non-zero if a command's
exit status differs from the recorded one.
"""

import json
import os
import subprocess
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GOLDEN = os.path.join(ROOT, "tests", "golden")


def main():
    with open(os.path.join(GOLDEN, "commands.json")) as fh:
        commands = json.load(fh)
    status = 0
    for cmd in commands:
        proc = subprocess.run([sys.executable, "-m", "tdlc.cli", *cmd["args"]], cwd=ROOT, capture_output=True)
        if proc.returncode != cmd["exit"]:
            print(f"{cmd['name']}: exit {proc.returncode}, expected {cmd['exit']}", file=sys.stderr)
            print(proc.stderr.decode(), file=sys.stderr)
            status = 1
            continue
        with open(os.path.join(GOLDEN, cmd["name"] + ".out"), "wb") as fh:
            fh.write(proc.stdout)
        print(f"wrote {cmd['name']}.out ({len(proc.stdout)} bytes)")
    return status


if __name__ == "__main__":
    sys.exit(main())
