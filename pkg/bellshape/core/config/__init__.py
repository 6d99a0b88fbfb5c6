# Configuration package - numerics defaults and CLI settings
from . import cli_config, numerics_config
