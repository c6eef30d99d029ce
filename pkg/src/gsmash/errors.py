"""Error type shared by every validator in the package."""


class GsmError(ValueError):
    """A failed structural check.

    ``code`` is one of the stable ``E_*`` identifiers; ``witness`` is the
    smallest piece of data exhibiting the failure (a triple of indices, a
    morphism, a point ...), suitable for JSON output.
    """

    def __init__(self, code, message="", witness=None):
        self.code = code
        self.witness = witness
        text = code if not message else f"{code}: {message}"
        if witness is not None:
            text += f" (witness: {witness!r})"
        super().__init__(text)
