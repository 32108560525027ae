__version__ = '0.1.0'

import fdsat.geometry
import fdsat.linkbudget
import fdsat.duplexing
import fdsat.usecases
import fdsat.scenario
import fdsat.report
