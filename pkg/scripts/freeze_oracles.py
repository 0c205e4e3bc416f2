"""Recompute the frozen test values with routes that avoid the quotient machinery.

Nichols dimensions come from the dense rank of the quantum symmetrizer on V^{(x)n}.
Diagonal rank-one spaces are checked against the q-factorial, and the swap braiding
against Witt's necklace formula for the free Lie algebra.
"""
import json

import sympy

from braidlab.braids import symmetrizer_sum
from braidlab.exactalg import rank
from braidlab.specfile import builtin_names, builtin_space
from braidlab.ydspace import apply_sum

D = 5


def witt(rank_, n):
    return int(sum(sympy.mobius(d) * rank_ ** (n // d) for d in sympy.divisors(n))) // n


def q_factorial_zero(m, k):
    # [k]_q! vanishes at a primitive m-th root iff some j <= k is a multiple of m
    return any(j % m == 0 for j in range(1, k + 1)) if m > 1 else False


out = {}
for name in builtin_names():
    V = builtin_space(name)
    D_ = max(D, int(name[4:]) + 2) if name.startswith("zeta") else D
    dims = [1] + [rank(apply_sum(V, n, symmetrizer_sum(n))) for n in range(1, D_ + 1)]
    out[name] = {"nichols_dense": dims}
    if name.startswith("zeta"):
        m = int(name[4:])
        out[name]["q_factorial"] = [0 if q_factorial_zero(m, k) else 1 for k in range(D_ + 1)]
out["symmetric-swap"]["witt"] = [witt(2, n) for n in range(1, D + 1)]
print(json.dumps(out, indent=1, sort_keys=True))
