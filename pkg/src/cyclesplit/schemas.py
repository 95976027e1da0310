"""JSON Schemas (draft 2020-12) for the reports the CLI emits."""

_FRACTION = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_NULLABLE_INT = {"type": ["integer", "null"]}

INDEX_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "IndexReport",
    "type": "object",
    "required": ["r", "group_order", "verdict", "split", "classes", "witness_class"],
    "properties": {
        "r": {"type": "integer", "minimum": 1},
        "group_order": {"type": "integer", "minimum": 1},
        "verdict": {"enum": ["split", "not split"]},
        "split": {"type": "boolean"},
        "density": _FRACTION,
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["class", "representative", "size", "index", "divides_r"],
                "properties": {
                    "class": {"type": "integer", "minimum": 0},
                    "representative": {"type": "string"},
                    "size": {"type": "integer", "minimum": 1},
                    "index": {"type": "integer", "minimum": 1},
                    "divides_r": {"type": "boolean"},
                    "pattern": {"type": "string"},
                },
            },
        },
        "witness_class": {"type": ["object", "null"]},
    },
}

CERTIFICATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "HasseCertificate",
    "type": "object",
    "required": ["group", "subgroup", "witness", "prime", "certified_index"],
    "properties": {
        "group": {"type": ["string", "object"]},
        "subgroup": {"type": ["string", "object"]},
        "witness": {"type": "string"},
        "witness_order": {"type": "integer", "minimum": 2},
        "prime": {"type": "integer", "minimum": 2},
        "certified_index": {"type": "integer", "minimum": 2},
    },
}

CROSS_VALIDATION = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CrossValidation",
    "type": "object",
    "required": ["passed", "tolerance", "samples", "membership_failures", "rows"],
    "properties": {
        "passed": {"type": "boolean"},
        "tolerance": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "samples": {"type": "integer", "minimum": 1},
        "membership_failures": {"type": "array", "items": {"type": "string"}},
        "density_predicted": {"type": ["string", "null"]},
        "density_empirical": {"type": ["number", "null"]},
        "density_ok": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pattern", "classes", "predicted", "count", "empirical", "member", "ok"],
                "properties": {
                    "pattern": {"type": "string"},
                    "classes": {"type": "array", "items": {"type": "integer"}},
                    "predicted": {"type": ["string", "null"]},
                    "predicted_float": {"type": ["number", "null"]},
                    "count": {"type": "integer", "minimum": 0},
                    "empirical": {"type": "number", "minimum": 0, "maximum": 1},
                    "member": {"type": "boolean"},
                    "ok": {"type": "boolean"},
                },
            },
        },
    },
}

SCAN_SUMMARY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ScanSummary",
    "type": "object",
    "required": ["spec", "primes_scanned", "ramified_primes", "unramified_count", "split_count",
                 "split_density", "all_split", "max_witness_maxdeg", "patterns", "cross_validation"],
    "properties": {
        "spec": {
            "type": "object",
            "required": ["components", "r", "primes_up_to", "tolerance"],
            "properties": {
                "components": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["multiplicity", "polynomials"],
                        "properties": {
                            "multiplicity": {"type": "integer", "minimum": 1},
                            "polynomials": {"type": "array", "items": {"type": "string"}},
                        },
                    },
                },
                "r": {"type": "integer", "minimum": 1},
                "primes_up_to": {"type": "integer", "minimum": 2},
                "tolerance": {"type": "number"},
            },
        },
        "primes_scanned": {"type": "integer", "minimum": 0},
        "ramified_primes": {"type": "array", "items": {"type": "integer"}},
        "unramified_count": {"type": "integer", "minimum": 0},
        "split_count": {"type": "integer", "minimum": 0},
        "nonsplit_count": {"type": "integer", "minimum": 0},
        "nonsplit_primes_head": {"type": "array", "items": {"type": "integer"}},
        "split_density": _FRACTION,
        "split_density_float": {"type": "number", "minimum": 0, "maximum": 1},
        "all_split": {"type": "boolean"},
        "max_witness_maxdeg": _NULLABLE_INT,
        "patterns": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pattern", "count", "frequency"],
                "properties": {
                    "pattern": {"type": "string"},
                    "count": {"type": "integer", "minimum": 1},
                    "frequency": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
        "cross_validation": {"oneOf": [{"type": "null"}, CROSS_VALIDATION]},
    },
}

DENSITY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Density",
    "type": "object",
    "required": ["r", "density"],
    "properties": {"r": {"type": "integer", "minimum": 1}, "density": _FRACTION},
}
