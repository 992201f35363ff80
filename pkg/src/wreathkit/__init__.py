"""Exact wreaths, mixed opwreaths, monoid extensions and twisted coactions
over finite-dimensional vector spaces."""

from .bundle import *  # noqa: F401,F403
from .coaction import *  # noqa: F401,F403
from .errors import BundleError, FibrationError, SearchSpaceError, ShapeError, ValidationError, WreathkitError
from .extension import *  # noqa: F401,F403
from .mixed import *  # noqa: F401,F403
from .report import AxiomEntry, AxiomReport, Witness
from .structures import *  # noqa: F401,F403
from .tensor import (
    GF,
    QQ,
    I,
    Field,
    Gen,
    Mor,
    Word,
    basis_vector,
    braid,
    compose,
    function_matrix,
    identity,
    matrix_units,
    permutation,
    random_mor,
    shuffle,
    tensor,
    whisker,
    zero,
)
from .wreath import *  # noqa: F401,F403

__version__ = "0.1.0"
