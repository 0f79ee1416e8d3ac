"""gridlab: a small laboratory for training-point distribution studies with
shallow physics-informed neural networks.

Four benchmark differential equations (radioactive decay, simple harmonic
oscillator, Laplace, Poisson) are trained under five collocation strategies
(equidistant, random, random sorted, Chebyshev, sine-based) and compared by
mean absolute error against the closed-form solutions.

Hot numeric kernels are JIT-compiled with numba by default; set
``GRIDLAB_BACKEND=numpy`` to force the pure-numpy fallback.
"""

from gridlab.jets import Jet2
from gridlab.network import NetLayout, ShallowNet, init_glorot
from gridlab.problems import ProblemSpec, TrainingData, make_problem
from gridlab.sampler import Interval, PointSet1D, PointSet2D

__version__ = "0.1.0"

__all__ = [
    "Jet2",
    "NetLayout",
    "ShallowNet",
    "init_glorot",
    "ProblemSpec",
    "TrainingData",
    "make_problem",
    "Interval",
    "PointSet1D",
    "PointSet2D",
    "__version__",
]
