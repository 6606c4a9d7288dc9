"""Exception types shared across the package."""


class SensepropError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SensepropError):
    def __init__(self, what: str, shape_a, shape_b):
        super().__init__(f"{what}: shapes {shape_a} and {shape_b} are incompatible")
        self.shape_a = shape_a
        self.shape_b = shape_b


class NumericalFailureError(SensepropError):
    """NaN/Inf produced by the dynamics; carries the first offending node."""

    def __init__(self, node_index: int, node_id=None):
        ident = f" (id {node_id!r})" if node_id is not None else ""
        super().__init__(f"non-finite value in updated assignment at node {node_index}{ident}")
        self.node_index = node_index
        self.node_id = node_id


class InputError(SensepropError):
    """Invalid user-supplied data (bad labels, bad norms, unknown ids, ...)."""


class FormatError(InputError):
    """Malformed file; carries location (line number or byte offset)."""

    def __init__(self, path, message: str, line: int | None = None, offset: int | None = None):
        loc = ""
        if line is not None:
            loc = f", line {line}"
        elif offset is not None:
            loc = f", byte {offset}"
        super().__init__(f"{path}{loc}: {message}")
        self.path = str(path)
        self.line = line
        self.offset = offset
