"""Enumeration caps.

Level sweeps, quotient closures and nucleus computations are exact but can
be asked for absurd sizes; these caps turn runaway requests into errors
instead of hangs.  The CLI reads SELFSIM_CAPS to raise them: either a bare
integer (level cap) or comma separated pairs like
``level=2000000,quotient=9,nucleus-depth=64,nucleus-size=1024``.
"""

import os

from .errors import FormatError

DEFAULT_LEVEL_CAP = 10 ** 6      # max |X|**k entries in a level enumeration
DEFAULT_QUOTIENT_CAP = 8         # max |X| for the symmetric quotient closure
DEFAULT_NUCLEUS_DEPTH = 64       # max breadth-first levels per pair product
DEFAULT_NUCLEUS_SIZE = 512       # max number of nucleus elements

_KEYS = {
    "level": "level_cap",
    "quotient": "quotient_cap",
    "nucleus-depth": "nucleus_depth",
    "nucleus-size": "nucleus_size",
}


def caps_from_env(environ=None) -> dict:
    """Parse SELFSIM_CAPS into keyword overrides for the ops that take caps."""
    env = os.environ if environ is None else environ
    raw = env.get("SELFSIM_CAPS", "").strip()
    if not raw:
        return {}
    out = {}
    if "=" not in raw:
        try:
            out["level_cap"] = int(raw)
        except ValueError:
            raise FormatError("SELFSIM_CAPS must be an integer or k=v pairs, got %r" % raw)
        return out
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in _KEYS:
            raise FormatError("unknown SELFSIM_CAPS key %r" % key)
        try:
            out[_KEYS[key]] = int(value)
        except ValueError:
            raise FormatError("bad SELFSIM_CAPS value for %r: %r" % (key, value))
    return out
