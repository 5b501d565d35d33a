"""MPJ Workbench - programs over J-monoids and threshold dot-depth one languages."""

try:
    from importlib.metadata import version
    __version__ = version("mpj-workbench")
except ImportError:
    __version__ = "unknown"
