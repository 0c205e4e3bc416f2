"""Dimensions of the brprim and Woronowicz levels over S_n next to the Lie operad."""
import sys
from math import factorial

from braidlab.operadlab import symmetrization_table

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 5
print(f"{'n':>2} {'brprim':>7} {'woron':>7} {'(n-1)!':>7} {'n!-1':>7}")
for row in symmetrization_table(n_max):
    n, b, w = row[:3]
    print(f"{n:>2} {b:>7} {w:>7} {factorial(n - 1):>7} {factorial(n) - 1:>7}")
