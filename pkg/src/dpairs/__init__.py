"""Counting D(n)-pairs {a, c} (ac + n a perfect square) by the proper
equivalence class of the binary quadratic form [a, 2 sqrt(ac + n), c]."""

from .bqf import QuadForm, class_label, class_representatives, equivalent
from .pairs import count_by_class, enumerate_pairs
from .theory import Prediction, predict_class, predict_total

__all__ = [
    "QuadForm",
    "class_label",
    "class_representatives",
    "equivalent",
    "count_by_class",
    "enumerate_pairs",
    "Prediction",
    "predict_class",
    "predict_total",
]
__version__ = "0.1.0"
