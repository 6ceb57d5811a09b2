"""liftlab: exhaustive finite-scale checks for measure-algebra liftings,
filter-kernel limit operators, and the partial-magma view of categories."""

__version__ = "0.1.0"

from .measure_space import MeasureSpace, build_space
from .verdict import InternalCheckError, Verdict

__all__ = ["MeasureSpace", "build_space", "Verdict", "InternalCheckError", "__version__"]
