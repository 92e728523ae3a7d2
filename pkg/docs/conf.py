import os
import sys
sys.path.insert(0, os.path.abspath('../'))

from temporal_embed import __version__  # noqa: E402


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon'
]

master_doc = 'index'
project = 'temporal_embed'
author = 'ilex'
version = release = __version__
exclude_patterns = ['_build']

html_theme = 'default'
