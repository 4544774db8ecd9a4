# Sphinx configuration for the adage docs, see
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys

# autodoc imports the package from the repository root
sys.path.insert(0, os.path.abspath('..'))


# -- Project information -----------------------------------------------------
project = 'adage'
copyright = '2024-2030, adage developers'
author = 'adage developers'
release = '0.3.1'


# -- General configuration ---------------------------------------------------
extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'recommonmark', 'sphinx_markdown_tables']
source_suffix = {'.rst': 'restructuredtext', '.md': 'markdown'}
master_doc = 'index'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']


# -- Options for HTML output -------------------------------------------------
html_theme = 'sphinx_rtd_theme'
