"""Matter-wave Poisson spot and far-field feasibility calculations."""

import os
from pathlib import Path

_presets = Path(__file__).with_name("presets")
if _presets.is_dir():
    os.environ.setdefault("ARAGO_PRESET_DIR", str(_presets))

from ._core import *  # noqa: E402,F401,F403
from ._core import ConfigError, NumericalError  # noqa: E402,F401
