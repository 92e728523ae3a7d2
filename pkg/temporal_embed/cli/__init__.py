from .config import RunConfig, load_config, parse_config_text
from .commands import build_parser, main
