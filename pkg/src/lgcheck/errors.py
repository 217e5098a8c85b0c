class VerificationError(AssertionError):
    """A mathematical identity the toolkit is built to confirm did not hold."""
