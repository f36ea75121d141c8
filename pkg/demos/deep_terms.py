"""Stream many terms in constant memory, write a b-file, check it back.

    python3 demos/deep_terms.py [N]
"""

import os
import sys
import tempfile
import time

from holorec.bfile import compare, read_bfile, unlimited_digits
from holorec.classify import classify_text
from holorec.pipeline import derive
from holorec.recurrence import iter_terms

N = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
d = derive(classify_text("1/sqrt(1-2*x-3*x^2)"))
print("recurrence:", d.recurrence)

path = os.path.join(tempfile.mkdtemp(), "b002426.txt")
start = time.perf_counter()
with unlimited_digits(), open(path, "w", encoding="utf-8") as fh:
    for n, t in enumerate(iter_terms(d.recurrence)):
        if n > N:
            break
        fh.write(f"{n} {t.numerator}\n")
print(f"wrote {N + 1} terms to {path} in {time.perf_counter() - start:.2f}s")
print(f"last term has about {int(t.numerator.bit_length() * 0.30103) + 1} digits")

bf = read_bfile(path)
head = [t for _, t in zip(range(2000), iter_terms(d.recurrence))]
mismatch, count = compare(bf, head)
print("re-check of the first", count, "entries:", "OK" if mismatch is None else mismatch)
