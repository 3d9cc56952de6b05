class SvlieError(Exception):
    pass


class SymbolNotInAlgebra(SvlieError):
    pass


class RejectedInput(SvlieError):
    pass


class WindowTooSmall(SvlieError):
    pass


class ParseError(SvlieError):
    """Malformed element expression; ``pos`` is the 0-based offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class IndexParityError(ParseError):
    pass
