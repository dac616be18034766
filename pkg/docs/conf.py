# -*- coding: utf-8 -*-
#
# fracmp documentation build configuration file.
import os
import sys
from datetime import date

sys.path.insert(0, os.path.abspath('..'))

import fracmp  # noqa

year = date.today().year
version = release = fracmp.__version__

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.coverage',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'alabaster'
]

try:
    import sphinxcontrib.spelling  # noqa
    extensions.append('sphinxcontrib.spelling')
except ImportError:
    pass

source_suffix = ['.rst']
master_doc = 'index'
project = 'fracmp'
copyright = '%s, %s' % (year, fracmp.__author__)
html_theme = 'alabaster'
html_theme_options = {
    'description': fracmp.__doc__.strip()
}
pygments_style = 'sphinx'
exclude_patterns = ['_build']
htmlhelp_basename = 'fracmpdoc'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None)
}
