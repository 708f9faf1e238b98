"""Two-level Boolean minimization with the Tail-Eliminate heuristic."""

from .cubes import (Cover, Cube, Literal, WidthError, cover_minterms, covers,
                    equivalent, intersect, is_redundant_in, minterms, weight)
from .engine import (AnchorPolicy, EndReason, InvariantError, IterationRecord,
                     MinimizationTrace, Mode, end_condition, minimize_function,
                     select_removal, te_minimize)
from .expand import FunctionSpec, expand_cover, prime_implicants
from .oracle import ScoreReport, exact_minimum_cover, score
from .temap import (ImplicantClass, ImplicantStats, OverlapEntry, TEMap,
                    build_te_map, classify, overlap)
from .textio import (parse_expression, read_pla, render_expression, render_kmap,
                     render_te_map, write_pla)

__version__ = "0.1.0"
