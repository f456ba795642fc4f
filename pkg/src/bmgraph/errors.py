"""Exception types shared across the package."""


class BmgraphError(Exception):
    """Base class for all input errors raised by this package."""


class GraphError(BmgraphError):
    """Invalid digraph input: unknown vertices, self-loops, bad colors."""


class TreeError(BmgraphError):
    """Invalid tree input: unknown nodes, outer-edge contraction, color clash."""


class ParseError(BmgraphError):
    """Malformed graph or tree file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
