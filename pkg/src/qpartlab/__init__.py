"""Exact q-series arithmetic and checks for partitions with bounded part differences."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, DegenerateDenominator, InadmissibleParameters,
                     NegativeExponentFactor, NonConvergent, NotAUnit, OutOfValidRange, QplError)
from .gf import (Monomial, SParams, closed_form_cleared, eval_S, gf_bounded_diff, gf_distinct,
                 gf_odd, gf_overpartition, monomial_grid, pochhammer, via_master)
from .numeric import (check_chu_vandermonde, check_ktw, phi, pochhammer_num, proof_chain,
                      run_trials)
from .oracle import (PartitionFamily, count_bounded_diff, count_distinct_bounded_diff,
                     count_odd_bounded_diff, count_overpartition, tabulate)
from .series import QSeries, ZPoly, add, dilate, first_mismatch, invert_unit, mul
from .verify import VerificationReport, verify_identity, verify_lemma
