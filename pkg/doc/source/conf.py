# -*- coding: utf-8 -*-
#
# cartanquot documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os
import os.path as p
import sphinx_rtd_theme
import datetime

sys.path.append(p.dirname(os.getcwd()))
sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'cartanquot'
copyright = u'2023-' + str(datetime.datetime.now().year) + u', cartanquot developers'
author = u'cartanquot developers'

# The short X.Y version and the full version, read from the package.
import cartanquot
v = cartanquot.__version__
version = v
release = v

exclude_patterns = ["_build"]

nitpicky = True
nitpick_ignore = [("py:class", "exceptions.Exception"), ("py:class", "numpy.ndarray"),
                  ("py:class", "np.ndarray"), ("py:class", "numpy.random.Generator"),
                  ("py:class", "np.random.Generator"), ("py:obj", "function"), ("py:class", "function")]

pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'cartanquotdoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'cartanquot', u'cartanquot Documentation',
     [author], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable/', None)}

autodoc_member_order = 'bysource'
