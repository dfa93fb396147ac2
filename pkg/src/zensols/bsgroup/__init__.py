from .domain import *
from .cli import *
