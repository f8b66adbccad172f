"""Exact computations for quantized characters of the quantum unitary groups
U_q(N) and central measures on the Gelfand-Tsetlin graph."""
from .errors import ArgumentError, DomainError, QCLError, ResourceError
from .gtgraph import ROOT, GTPath, Signature, count_paths, enumerate_paths, interlaces, predecessors
from .weights import WeightScheme, edge_weight, path_weight, relative_weighted_dim, weighted_dim
from .measures import CoherentSystem, LevelMeasure

__version__ = "0.1.0"
