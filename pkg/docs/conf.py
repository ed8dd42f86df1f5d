# Sphinx configuration for django-bisolve.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import shutil
import sys

__location__ = os.path.dirname(__file__)

# -- Path setup --------------------------------------------------------------

sys.path.insert(0, os.path.join(__location__, ".."))
sys.path.insert(0, os.path.join(__location__, "../tests/djangotest"))

# autodoc imports the models, so Django needs a configured project
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "djangotest.settings")
try:
    import django

    django.setup()
except ImportError:
    pass

# -- Run sphinx-apidoc -------------------------------------------------------
# Read the Docs does not run sphinx-apidoc before building, so the module
# reference is regenerated here on every build.

from sphinx.ext import apidoc

output_dir = os.path.join(__location__, "api")
module_dir = os.path.join(__location__, "../django_bisolve")
shutil.rmtree(output_dir, ignore_errors=True)
try:
    apidoc.main(
        [
            "--implicit-namespaces",
            "-f",
            "-o",
            output_dir,
            module_dir,
            os.path.join(module_dir, "migrations"),
        ]
    )
except Exception as e:
    print(f"Running `sphinx-apidoc` failed!\n{e}")

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.todo",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "django-bisolve"
copyright = "2026, curvedinf"

try:
    from django_bisolve import __version__ as version
except ImportError:
    version = ""

if not version or version.lower() == "unknown":
    version = os.getenv("READTHEDOCS_VERSION", "unknown")

release = version

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", ".venv"]
pygments_style = "sphinx"
todo_emit_warnings = True

# pydantic models carry many generated members; keep the reference readable
autodoc_default_options = {"members": True, "exclude-members": "model_config, model_fields"}

# -- Options for HTML output -------------------------------------------------

html_theme = "alabaster"
html_theme_options = {"sidebar_width": "300px", "page_width": "1200px"}
html_static_path = []
htmlhelp_basename = "django-bisolve-doc"

# -- External mapping --------------------------------------------------------

python_version = ".".join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    "sphinx": ("https://www.sphinx-doc.org/en/master", None),
    "python": ("https://docs.python.org/" + python_version, None),
    "django": (
        "https://docs.djangoproject.com/en/stable/",
        "https://docs.djangoproject.com/en/stable/_objects/",
    ),
    "pydantic": ("https://docs.pydantic.dev/latest/", None),
}

print(f"loading configurations for {project} {version} ...", file=sys.stderr)
