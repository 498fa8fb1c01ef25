"""Exact Cantor series expansions of rational numbers."""

from .analysis import (
    ConstantShiftReport,
    GroupingReport,
    PeriodReport,
    UnitFractionReport,
    constant_shift_check,
    detect_period,
    finiteness_horizon,
    grouping_ratios,
    unit_fraction_digits,
)
from .expansion import (
    DigitStream,
    ExtractionState,
    ExtractionTrace,
    digit_stream,
    digits_direct,
    direct_traces,
    prefix_digits,
    render_digits,
    parse_digits,
    shift_n,
    verify_decomposition,
)
from .representation import (
    Cylinder,
    EventuallyPeriodic,
    Finite,
    Truncated,
    cylinder_interval,
    eval_finite,
    eval_periodic,
    evaluate,
    truncation_bound,
)
from .sequences import (
    EVEN,
    ODD,
    Affine,
    Constant,
    ExplicitPrefix,
    Factorial,
    Periodic,
    parse_spec,
    partial_product,
    q_at,
    render,
)

__version__ = "0.1.0"
