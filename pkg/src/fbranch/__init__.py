"""Branchwidth under obstruction-pattern cut functions.

Library layout:

- ``graph``     graph type, parsing, elementary algorithms, exact treewidth
- ``families``  the six ordered bipartite pattern families and recognition
- ``cutfn``     cut-function evaluation (per family, unions, twin classes)
- ``decomp``    branch decompositions, exact/greedy solvers, tree utilities
- ``typseq``    compressed integer sequences: tau, enumeration, interleaving
- ``kernel``    feedback-edge-set kernelization (reduction rules + loop)
- ``treedepth`` treedepth decompositions, duplicate pruning, bound calculators
- ``verify``    empirical verification suites for the structural laws
- ``cli``       command-line front end
"""

__version__ = "0.1.0"
