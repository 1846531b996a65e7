class ParameterError(ValueError):
    """A model parameter is outside its admissible range."""


class EdgeListParseError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def check_probability(p: float, *, allow_zero: bool = False) -> float:
    p = float(p)
    lower_ok = p >= 0.0 if allow_zero else p > 0.0
    if not (lower_ok and p < 1.0):
        interval = "[0, 1)" if allow_zero else "(0, 1)"
        raise ParameterError(f"p must lie in {interval}, got {p}")
    return p
