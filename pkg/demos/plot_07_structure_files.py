"""
Structure files and the command line
====================================

Structures can be written in a small text format with exact rationals and
handed to the ``nambulie`` command. This script drives the same entry point
in-process on the files in ``demos/data``.
"""

# %%
from pathlib import Path

from nambulie.cli import main
from nambulie.structfile import build_lie_algebra, read_structure

DATA = Path(__file__).resolve().parent / "data"
print((DATA / "u2.txt").read_text())
L = build_lie_algebra(read_structure(DATA / "u2.txt"))
print("dimension", L.dim)

# %%
# Each call returns the process exit code: 0 when every verdict matches its
# expectation, 1 otherwise, 2 on bad input.
for argv in (["verify", DATA / "jacobian.txt", "--suite-size", "3"],
             ["search", DATA / "u2.txt", "--case", "a", "--ideal", "su2"],
             ["core", DATA / "u2_coboundary_linear.txt"],
             ["verify", DATA / "noninvolutive.txt", "--machine", "--suite-size", "1"],
             ["verify", DATA / "bad_float.txt"]):
    print("$ nambulie", " ".join(str(a) for a in argv))
    print("exit code:", main([str(a) for a in argv]))
    print()
