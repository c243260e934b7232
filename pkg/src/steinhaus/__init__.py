"""Weighted digit measures on [0, 1] and generalized normality of numbers."""

from .alphabet import (
    DigitDistribution,
    DigitWord,
    degenerate_distribution,
    format_rational,
    load_distribution,
    make_distribution,
    parse_distribution,
    parse_rational,
    uniform_distribution,
    word_probability,
)
from .errors import SteinhausError
from .measure import (
    DigitSubset,
    Expansion,
    FiniteExpansion,
    PrefixCylinder,
    TailKind,
    cylinder_measure,
    dual_representations,
    interval_enclosure,
    interval_measure,
    interval_to_cylinders,
    point_measure,
    psi_value,
)
from .sources import (
    DigitStream,
    digits_of,
    file_stream,
    open_source,
    rational_digits,
    sample_stream,
    sqrt_digits,
    steinhaus_example_stream,
)

__version__ = "0.1.0"
