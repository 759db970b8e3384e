"""
The script language
===================

The same computations driven from a script, as the ``fatarc`` command
does.  Reports carry the source position and a JSON form.
"""

from fatarc.cli import emit, run

script = """
field Q
ring R = poly(x, y)
scheme X = V(<x*y>)
fatpoint v = <xi^3>
arc X v
dim X v
count X over 2 via v
closure X to (t) by (x + y)
igusa X at germ(A1, origin) upto 4
"""

reports = run(script)
print(emit(reports), end="")

# machine-readable form of the dimension report
print(reports[1].to_json())
