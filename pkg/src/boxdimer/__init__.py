"""Exact enumeration of double-box and tripartite double-dimer configurations."""

from .qseries import QSeries, macmahon, macmahon_box
from .condense import x_series, verify_main
from .doublebox import enumerate_classes, zdbc
from .doubledimer import zddc, zddc_window

__all__ = ["QSeries", "macmahon", "macmahon_box", "x_series", "verify_main",
           "enumerate_classes", "zdbc", "zddc", "zddc_window"]
__version__ = "0.1.0"
