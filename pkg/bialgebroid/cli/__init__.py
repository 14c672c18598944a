__all__ = ["commands"]
