"""Certify every embedded OEIS row and print what each recurrence looks like.

    python3 demos/oeis_tables.py [AXXXXXX ...]
"""

import sys

from holorec.fixtures import FIXTURES, run_fixture_suite

wanted = set(sys.argv[1:])
rows = [f for f in FIXTURES if not wanted or f.oeis_id in wanted]
passed, failed, results = run_fixture_suite(rows, terms=100)

for r in results:
    rec = r.recurrence
    shape = f"span {rec.span}, degree {rec.degree}" if rec is not None else r.message
    head = ", ".join(str(t) for t in (r.fixture.known_prefix or ())[:8])
    print(f"{r.fixture.oeis_id}  {r.fixture.interpretation}  {shape:18}  {head}")
    print(f"         {r.fixture.cls.describe()}")

print(f"\n{passed} certified against the series oracle for 100 terms, {failed} failed")
