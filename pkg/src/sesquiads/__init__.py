"""Sesquiads, their modules, congruence schemes and sheaf cohomology on finite spaces."""
from . import intlin, sesquiad, smodule, scheme, cohomology, deffile

__all__ = ["intlin", "sesquiad", "smodule", "scheme", "cohomology", "deffile"]
__version__ = "0.1.0"
