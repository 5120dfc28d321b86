# FILE: switchcert/simulation/__init__.py

from switchcert.simulation.integrator import DIVERGENCE_THRESHOLD, build_grid, integrate
from switchcert.simulation.segments import ConstantSegment, InitialSegment, InterpolatedSegment
from switchcert.simulation.trajectory import Trajectory, history_lookup
