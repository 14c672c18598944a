"""Structure-file language"""

__all__ = ["scanner", "nodes", "parser", "render", "loader"]
