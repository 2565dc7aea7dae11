"""
drtcalc: a workbench for process algebra with discrete relative timing.
"""
__version__ = "0.1.0"
