from autohardy.util import config_util
from autohardy.util import csv_util
from autohardy.util import log_space
