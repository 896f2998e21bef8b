"""Level dimensions of the Fock space against supertableaux.

Each level splits into covariant gl(m|n) modules labelled by hook
partitions. The table lists the partitions, their tableau counts and the
number of patterns under the matching top row.
"""

import sys

from parastat.charcount import covariant_dimension, hook_partitions, top_row_for, verify_level_dimensions
from parastat.gzbasis import Signature, enumerate_with_top

m, n, p, cap = (int(x) for x in sys.argv[1:5]) if len(sys.argv) > 4 else (2, 1, 2, 5)
sig = Signature(m, n, p, cap)

print(f"gl({m}|{n}), p = {p}")
print(f"{'level':>5}  {'partition':<17}{'top row':<14}{'tableaux':>9}{'patterns':>9}")
for level in range(cap + 1):
    for lam in hook_partitions(m, n, level):
        if lam and lam[0] > p:
            continue
        top = top_row_for(lam, m, n)
        print(f"{level:>5}  {str(lam):<17}{str(top):<14}{covariant_dimension(lam, m, n):>9}"
              f"{len(enumerate_with_top(top, sig)):>9}")

rep = verify_level_dimensions(sig)
print("\nper-level totals:", [r["patterns"] for r in rep["results"]], "match:", rep["ok"])
