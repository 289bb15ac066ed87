"""Physical metrics from beach-litter instance segmentations.

Polygons are sequences of ``(x, y)`` pixel coordinates. Areas are in square
meters and the ground sampling distance (``gsd``) is in meters per pixel.
Functions that need a taxonomy default to the bundled hazard-weight table.
"""

from ._litterscope import *  # noqa: F401,F403
from ._litterscope import __version__, LitterscopeError, ParseError  # noqa: F401


def load_annotations(path, schema=None):
    """Read an annotation file; the schema follows the extension unless given."""
    if schema is None:
        schema = "csv" if str(path).lower().endswith(".csv") else "json"
    with open(path, encoding="utf-8") as fh:
        return parse_annotations(fh.read(), schema)  # noqa: F405
