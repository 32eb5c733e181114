"""Python bindings for the semprop toolchain."""

from ._semprop import (
    UsageError,
    conform,
    constructs,
    coverage,
    flatten,
    fnv1a64_hex,
    implies,
    kind_ancestors,
    kind_parts,
    lint,
    parse_doc_comment,
    registry_entry,
    registry_names,
    run_cli,
    translate,
)

__all__ = [
    "UsageError",
    "conform",
    "constructs",
    "coverage",
    "flatten",
    "fnv1a64_hex",
    "implies",
    "kind_ancestors",
    "kind_parts",
    "lint",
    "parse_doc_comment",
    "registry_entry",
    "registry_names",
    "run_cli",
    "translate",
]
