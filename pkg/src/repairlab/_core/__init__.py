"""Hot-kernel backend selection.

The compiled Cython kernels are used when the extension built successfully;
otherwise (or when ``REPAIRLAB_PURE_PYTHON=1`` is set) the NumPy reference
implementations take over. Both backends are bit-identical, so the choice only
affects speed — see the ``bench-kernels`` CLI subcommand for a comparison.
"""

import os

from . import fallback

try:
    from . import kernels as _compiled
except ImportError:  # extension not built on this host
    _compiled = None

_force_pure = os.environ.get("REPAIRLAB_PURE_PYTHON", "") == "1"
backend = fallback if (_compiled is None or _force_pure) else _compiled

compiled_available = _compiled is not None


def backend_name():
    return backend.BACKEND_NAME


def backends():
    """All importable backends, for equality tests and benchmarks."""
    out = {"fallback": fallback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


# Re-exported kernel entry points (resolved at import time).
mix64 = backend.mix64
hash_unit = backend.hash_unit
render_frame = backend.render_frame
salt_pepper = backend.salt_pepper
rain_streak_counts = backend.rain_streak_counts
composite_streaks = backend.composite_streaks
box_blur3 = backend.box_blur3
snow_stamp = backend.snow_stamp

# Palette layout lives with the reference implementation.
PAL_ASPHALT = fallback.PAL_ASPHALT
PAL_ASPHALT_ALT = fallback.PAL_ASPHALT_ALT
PAL_STRIPE = fallback.PAL_STRIPE
PAL_DASH = fallback.PAL_DASH
PAL_GREEN_A = fallback.PAL_GREEN_A
PAL_GREEN_B = fallback.PAL_GREEN_B
PAL_FAR_FIELD = fallback.PAL_FAR_FIELD
PAL_HAZE = fallback.PAL_HAZE
PAL_SKY_TOP = fallback.PAL_SKY_TOP
PAL_SKY_HORIZON = fallback.PAL_SKY_HORIZON
PALETTE_ROWS = fallback.PALETTE_ROWS
