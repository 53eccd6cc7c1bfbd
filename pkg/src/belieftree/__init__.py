# Define the version of the package
__version__ = "1.0.0.0"

# Import the standard utilities
from .utils import BeliefTreeException, printer, helper

# Import the tables, networks and the compiler
from .tables import BeliefTable, Finding
from .network import *
from .compiler import *

# Import the propagation engine, the approximation and the oracle
from .engine import *
from .approx import *
from .oracle import *

# Include the runner utilities
from .utils import runner
