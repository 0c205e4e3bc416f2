"""Exact computations with braided vector spaces, their tensor and Nichols algebras,
primitive towers, and level-wise braided operads in finite group algebras."""

from .braids import BraidWord, FormalBraidSum, Perm
from .exactalg import Matrix, Subspace
from .fingroup import BraidQuotient, FinGroup, GroupAlgebraElement
from .hopf import GradedHopfQuotient, free_algebra, nichols_quotient
from .specfile import builtin_space, parse_spec
from .ydspace import YDSpace

__all__ = [
    "BraidWord", "FormalBraidSum", "Perm", "Matrix", "Subspace", "BraidQuotient", "FinGroup",
    "GroupAlgebraElement", "GradedHopfQuotient", "free_algebra", "nichols_quotient", "builtin_space",
    "parse_spec", "YDSpace",
]
