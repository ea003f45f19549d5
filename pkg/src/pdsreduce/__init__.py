"""Reduction workbench: PCP -> PCTL model checking of stateless probabilistic/quantum pushdown systems."""

__version__ = "0.1.0"
