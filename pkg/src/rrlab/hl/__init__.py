"""Hall-Littlewood polynomials at geometric arguments and the associated multi-sums."""

from .core import (b_lambda, hl_branching, hl_finite, hl_geometric_reference, hl_modified_p,
                   hl_modified_q, hl_modified_q_truncated, qbinom)
from .partitions import conjugate, double, make_partition, partitions_in_box
from .sums import (ag_sum, bressoud_sum, hl_geometric, m1_pair_sum, q2r_sum, rect_limit,
                   sum_side)

__all__ = ["ag_sum", "b_lambda", "bressoud_sum", "conjugate", "double", "hl_branching",
           "hl_finite", "hl_geometric", "hl_geometric_reference", "hl_modified_p",
           "hl_modified_q", "hl_modified_q_truncated", "m1_pair_sum", "make_partition",
           "partitions_in_box", "q2r_sum", "qbinom", "rect_limit", "sum_side"]
