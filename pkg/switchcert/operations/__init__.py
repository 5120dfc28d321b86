# FILE: switchcert/operations/__init__.py

from switchcert.operations.analysis_operations import halanay_operation, validate_operation
from switchcert.operations.certificate_operations import verify_thm4_operation, verify_thm5_operation
from switchcert.operations.reproduce_operations import reproduce_example
from switchcert.operations.simulation_operations import mc_operation, simulate_operation
