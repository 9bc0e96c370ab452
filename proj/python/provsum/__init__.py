"""Python bindings for the provsum C++ core."""

import json

from ._provsum import (
    Error,
    InvalidArgument,
    NotFoundError,
    ParseError,
    TemplateError,
    Vocabulary,
    Workspace,
    generate_synthetic,
    parse_log,
    render_template,
    segment,
    tokenize,
    write_synthetic_workspace,
)


def summarize(workspace_dir, session_id, segments=11):
    """Summary of one session as a dict with the HTTP API's field names."""
    ws = Workspace.open(str(workspace_dir))
    return json.loads(ws.summary_json(session_id, segments))


__all__ = [
    "Error",
    "InvalidArgument",
    "NotFoundError",
    "ParseError",
    "TemplateError",
    "Vocabulary",
    "Workspace",
    "generate_synthetic",
    "parse_log",
    "render_template",
    "segment",
    "summarize",
    "tokenize",
    "write_synthetic_workspace",
]
