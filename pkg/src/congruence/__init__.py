"""Exact computations with finite augmented algebras over a discrete valuation ring, and their modules."""
from .algebra import AlgebraMap, FiniteOAlgebra, validate
from .amodule import AModule, wiles_defect
from .criteria import ArtinianAlgebra, Conclusion, Verdict
from .dvr import DvrSpec, RatFuncLocal, ZLocal
from .errors import CongruenceError

__version__ = "0.1.0"

__all__ = [
    "AModule",
    "AlgebraMap",
    "ArtinianAlgebra",
    "Conclusion",
    "CongruenceError",
    "DvrSpec",
    "FiniteOAlgebra",
    "RatFuncLocal",
    "Verdict",
    "ZLocal",
    "__version__",
    "validate",
    "wiles_defect",
]
