"""
Numerical Sarkisov links, defect bounds and nodal defects of terminal Gorenstein Fano 3-folds.
"""

__version__ = '0.1.0'
