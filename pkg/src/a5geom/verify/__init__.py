"""Registry-driven verification of the computational claims."""

from .runner import CheckDescriptor, CheckReport, emit_report, run_checks
from .scenario import RegistryError, Scenario, load_data

__all__ = ["CheckDescriptor", "CheckReport", "RegistryError", "Scenario", "emit_report", "load_data", "run_checks"]
