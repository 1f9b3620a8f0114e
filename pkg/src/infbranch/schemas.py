"""JSON Schema (draft 2020-12) documents for the CLI's JSON output."""

_EXPONENT = {"type": "string", "pattern": r"^-?\d+/\d+$"}

TERM = {
    "type": "object",
    "required": ["exponent", "re", "im"],
    "properties": {"exponent": _EXPONENT, "re": {"type": "number"}, "im": {"type": "number"}},
}

SERIES = {
    "type": "object",
    "required": ["N", "watermark", "terms"],
    "properties": {
        "N": {"type": "integer", "minimum": 1},
        "watermark": _EXPONENT,
        "terms": {"type": "array", "items": TERM},
    },
}

POINT = {
    "type": "object",
    "required": ["re", "im", "mult"],
    "properties": {"re": {"type": "number"}, "im": {"type": "number"},
                   "mult": {"type": "integer", "minimum": 1}},
}

BRANCH = {
    "type": "object",
    "required": ["point", "N", "degree", "watermark", "terms"],
    "properties": {
        "point": POINT,
        "N": {"type": "integer", "minimum": 1},
        "degree": {"type": "integer", "minimum": 1},
        "watermark": _EXPONENT,
        "terms": {"type": "array", "items": TERM},
    },
}

POINTS_OUTPUT = {
    "type": "object",
    "required": ["lambda", "points"],
    "properties": {"lambda": {"type": "integer", "minimum": 0},
                   "points": {"type": "array", "items": POINT}},
}

BRANCHES_OUTPUT = {
    "type": "object",
    "required": ["lambda", "branches"],
    "properties": {"lambda": {"type": "integer", "minimum": 0},
                   "branches": {"type": "array", "items": BRANCH}},
}

_UNMATCHED = {
    "type": "object",
    "required": ["point", "branch"],
    "properties": {"point": POINT, "branch": {"type": ["integer", "null"]}},
}

BEHAVIOR_REPORT = {
    "type": "object",
    "required": ["verdict", "failure_stage", "lambda", "points", "pairing", "unmatched"],
    "properties": {
        "verdict": {"enum": ["same", "different"]},
        "failure_stage": {"enum": [None, "points", "branch_unmatched_forward",
                                   "branch_unmatched_backward"]},
        "lambda": {"type": "integer", "minimum": 0},
        "points": {
            "type": "object",
            "required": ["a", "b"],
            "properties": {"a": {"type": "array", "items": POINT},
                           "b": {"type": "array", "items": POINT}},
        },
        "branches": {
            "type": "object",
            "properties": {"a": {"type": "array", "items": BRANCH},
                           "b": {"type": "array", "items": BRANCH}},
        },
        "pairing": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "branch_a", "branch_b", "witness"],
                "properties": {
                    "point": POINT,
                    "branch_a": {"type": "integer", "minimum": 0},
                    "branch_b": {"type": "integer", "minimum": 0},
                    "witness": {
                        "type": "object",
                        "required": ["c_re", "c_im", "deviation"],
                        "properties": {"c_re": {"type": "number"}, "c_im": {"type": "number"},
                                       "deviation": {"type": "number", "minimum": 0}},
                    },
                },
            },
        },
        "unmatched": {
            "type": "object",
            "required": ["a", "b"],
            "properties": {"a": {"type": "array", "items": _UNMATCHED},
                           "b": {"type": "array", "items": _UNMATCHED}},
        },
    },
}

SAMPLE_OUTPUT = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["z_re", "z_im", "y_re", "y_im", "leaf"],
        "properties": {k: {"type": "number"} for k in ("z_re", "z_im", "y_re", "y_im")}
        | {"leaf": {"type": "integer", "minimum": 0}},
    },
}

HAUSDORFF_OUTPUT = {
    "type": "object",
    "required": ["grid", "note", "estimates"],
    "properties": {
        "grid": {"type": "integer", "minimum": 8},
        "note": {"type": "string"},
        "estimates": {
            "type": "array",
            "items": {"type": "object", "required": ["window", "estimate"],
                      "properties": {"window": {"type": "number", "exclusiveMinimum": 0},
                                     "estimate": {"type": "number", "minimum": 0}}},
        },
    },
}
