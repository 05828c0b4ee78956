"""Kernel selection: compiled extension when available, pure Python otherwise.

Set TOUGHHAM_PURE=1 to force the pure-Python kernels.
"""

import os

from . import _pure

if os.environ.get("TOUGHHAM_PURE") == "1":
    active = _pure
else:
    try:
        from . import _fast  # type: ignore[attr-defined]

        active = _fast
    except ImportError:
        active = _pure

COMPILED = active.COMPILED
toughness = active.toughness
is_2k2_free = active.is_2k2_free
max_independent_set = active.max_independent_set
hamiltonian_cycle = active.hamiltonian_cycle
sweep_2k2_free = active.sweep_2k2_free
exists_cycle_cover = active.exists_cycle_cover
