"""Published JSON schema for command-line responses.

Every response printed by the CLI validates against RESPONSE_SCHEMA; the
test suite enforces this for the whole fixture corpus.
"""

from __future__ import annotations

COMMANDS = [
    "cohom",
    "dims",
    "classify",
    "embed",
    "check-tau",
    "decide",
    "ideal",
    "hilbert",
    "degenerate",
    "smoothability",
]

RESPONSE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "p1ropes response",
    "type": "object",
    "additionalProperties": False,
    "required": ["command", "status"],
    "properties": {
        "command": {"type": "string", "enum": COMMANDS},
        "status": {"type": "string", "enum": ["ok", "invalid-input", "internal-error"]},
        "input": {"type": "object"},
        "result": {"type": ["object", "array"]},
        "certified": {"type": "array", "items": {"type": "string"}},
        "error": {"type": "string"},
    },
    "allOf": [
        {
            "if": {"properties": {"status": {"const": "ok"}}},
            "then": {"required": ["input", "result"]},
        },
        {
            "if": {"properties": {"status": {"enum": ["invalid-input", "internal-error"]}}},
            "then": {"required": ["error"]},
        },
    ],
}
