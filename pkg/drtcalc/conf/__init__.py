from .system import *
from .harness import *
from .par import *
