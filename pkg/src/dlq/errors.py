class PreconditionError(ValueError):
    """An input violates a named precondition, e.g. ``"w not I-reduced"``.

    The message is the single-line machine-parsable reason reported by the CLI.
    """
