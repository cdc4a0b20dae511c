"""askdb: rule-based English questions over an embedded relational store."""

from .catalog import (
    Catalog,
    load_builtin_catalog,
    load_catalog,
    load_catalog_file,
    render_catalog,
    validate_catalog,
)
from .gateway import PipelineError, QueryResponse, Trace, answer_question
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "PipelineError",
    "QueryResponse",
    "Trace",
    "answer_question",
    "create_app",
    "load_builtin_catalog",
    "load_catalog",
    "load_catalog_file",
    "render_catalog",
    "validate_catalog",
    "__version__",
]
