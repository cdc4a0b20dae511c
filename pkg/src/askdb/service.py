"""HTTP front end: a small JSON API plus optional static console assets.

POST /api/query   {"question": "..."} -> sql, template, results, trace
GET  /api/schema  tables, attributes, key kinds, default attributes
GET  /api/health  {"status": "ok"}

Pipeline failures come back as 422 with the failing stage named;
requests that are not valid JSON (or lack a question string) as 400.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .catalog import Catalog, load_builtin_catalog, load_catalog_file
from .gateway import PipelineError, answer_question
from .rulemap import build_matcher

FALLBACK_PAGE = """<!doctype html>
<html>
<head><meta charset="utf-8"><title>askdb</title></head>
<body>
<h1>askdb</h1>
<p>The query API is up. POST {"question": "..."} to <code>/api/query</code>.</p>
<p>No console assets are installed; build the frontend and pass its
dist directory to serve one here.</p>
</body>
</html>
"""


def create_app(catalog: Catalog, static_dir: str | Path | None = None) -> FastAPI:
    matcher = build_matcher(catalog.rules)
    app = FastAPI(title="askdb", docs_url=None, redoc_url=None)

    @app.post("/api/query")
    async def query(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse(
                {"error": {"message": "request body is not valid JSON"}},
                status_code=400,
            )
        question = payload.get("question") if isinstance(payload, dict) else None
        if not isinstance(question, str):
            return JSONResponse(
                {"error": {"message": "request must carry a question string"}},
                status_code=400,
            )
        try:
            response = answer_question(question, catalog, matcher=matcher)
        except PipelineError as err:
            return JSONResponse(err.to_dict(), status_code=422)
        return JSONResponse(response.to_dict())

    @app.get("/api/schema")
    async def schema():
        return {
            "tables": [
                {
                    "name": t.name,
                    "attributes": [
                        {"name": a.name, "key": a.key} for a in t.attributes
                    ],
                    "default_attribute": t.default_attribute,
                }
                for t in catalog.schema.tables
            ]
        }

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    static_path = Path(static_dir) if static_dir else None
    if static_path and (static_path / "index.html").is_file():
        app.mount("/", StaticFiles(directory=static_path, html=True), name="console")
    else:

        @app.get("/", response_class=HTMLResponse)
        async def index():
            return FALLBACK_PAGE

    return app


def default_static_dir() -> Path | None:
    """Console assets built next to the working directory, if any."""
    candidate = Path("frontend") / "dist"
    if (candidate / "index.html").is_file():
        return candidate
    return None


def parse_bind(bind: str) -> tuple[str, int]:
    host, _, port_text = bind.rpartition(":")
    if not host:
        host = "127.0.0.1"
    try:
        port = int(port_text)
    except ValueError:
        raise ValueError(f"bind address '{bind}' is not HOST:PORT") from None
    return host, port


def serve(
    config_path: str | Path | None = None,
    bind: str = "127.0.0.1:8000",
    static_dir: str | Path | None = None,
) -> None:
    import uvicorn

    catalog = (
        load_builtin_catalog() if config_path is None else load_catalog_file(config_path)
    )
    if static_dir is None:
        static_dir = default_static_dir()
    host, port = parse_bind(bind)
    uvicorn.run(create_app(catalog, static_dir=static_dir), host=host, port=port)
