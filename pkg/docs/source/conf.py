# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# http://www.sphinx-doc.org/en/master/config

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

from rhocompat import __version__

# -- Project information -----------------------------------------------------

project = "rhocompat"
copyright = "2026, rhocompat developers"
author = "rhocompat developers"

version = __version__
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx_immaterial",
    "sphinx_immaterial.apidoc.python.apigen",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.doctest",
    "m2r2",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/reference/", None),
    "matplotlib": ("https://matplotlib.org/stable/", None),
}

source_suffix = [".rst", ".md"]
master_doc = "index"
language = "en"
exclude_patterns = ["build/*"]
pygments_style = None

# -- Options for autodoc ----------------------------------------------------

autodoc_typehints = "description"
autodoc_class_signature = "separated"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_immaterial"
html_theme_options = {
    "icon": {"repo": "fontawesome/brands/github", "edit": "material/file-edit-outline"},
    "palette": {"primary": "indigo"},
    "toc_title_is_page_title": True,
}
htmlhelp_basename = "rhocompatdoc"

# -- Options for LaTeX and manual pages ----------------------------------------

latex_documents = [
    (master_doc, "rhocompat.tex", "rhocompat Documentation", author, "manual"),
]
man_pages = [(master_doc, "rhocompat", "rhocompat Documentation", [author], 1)]

# -- python_apigen configuration -------------------------------------------------

python_apigen_modules = {
    "rhocompat": "_rhocompat/",
    "rhocompat.core": "_rhocompat/core/",
    "rhocompat.stats": "_rhocompat/stats/",
    "rhocompat.models": "_rhocompat/models/",
    "rhocompat.certificates": "_rhocompat/certificates/",
    "rhocompat.optimizers": "_rhocompat/optimizers/",
    "rhocompat.benchmarks": "_rhocompat/benchmarks/",
    "rhocompat.utils": "_rhocompat/utils/",
    "rhocompat.cli": "_rhocompat/cli/",
}
