"""Arrangements and covers shared by the test modules."""

from toricarr.arrangement import ToricArrangement, braid, essentialize
from toricarr.intlat import IntMatrix

# the coordinates used for the rank-2 essential braid arrangement throughout
B3E = ToricArrangement.central([(1, 0), (0, 1), (1, 1)])
THREE_LINES = ToricArrangement.central([(1, 0), (1, -1), (1, 1)])
B4E = essentialize(braid(4))[0]
# primitive, essential, pure, but no atom spans a length-1 M-ideal
NOT_SS = ToricArrangement.central([(1, 0), (0, 1), (1, 2), (2, 1)])
A = IntMatrix.of([[2, 1], [0, -4]])
