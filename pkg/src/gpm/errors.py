"""Exception types shared across the package.

`InputError` covers everything a caller can cause (bad node ids, malformed
documents, out-of-range parameters) and maps to exit code 1 in the CLI.
`InternalInvariantError` signals a broken internal guarantee and maps to
exit code 2; seeing one is a bug, not a usage problem.
"""


class InputError(ValueError):
    """Invalid caller-supplied input (node id, parameter, document)."""


class ParseError(InputError):
    """Malformed graph document; message carries the offending line number."""


class InternalInvariantError(RuntimeError):
    """An internal guarantee failed; indicates a bug in this package."""
