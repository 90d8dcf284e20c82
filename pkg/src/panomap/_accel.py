"""Kernel backend selection.

Hot numeric kernels ship in two variants: numba ``@njit`` loops and a pure
vectorized-numpy fallback. The variant is picked once at import time from
the ``PANOMAP_NUMBA`` environment variable; set it to ``0``/``false``/``off``
to force the numpy path. A missing numba install also falls back silently.

Modules with dual kernels dispatch on :data:`NUMBA_ENABLED`, e.g.::

    if _accel.NUMBA_ENABLED:
        from . import _cost_nb as _impl
    else:
        from . import _cost_np as _impl

``benchmarks/compare_backends.py`` times the two paths against each other.
"""

import os


def _env_enabled() -> bool:
    value = os.environ.get("PANOMAP_NUMBA", "1").strip().lower()
    return value not in ("0", "false", "off", "no")


try:
    import numba  # noqa: F401

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and _env_enabled()


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def num_threads() -> int:
    """Worker count honored by parallel kernels (PANOMAP_WORKERS, default 1)."""
    value = os.environ.get("PANOMAP_WORKERS", "").strip()
    if not value:
        return 1
    return max(1, int(value))


def set_num_threads(n: int) -> None:
    """Cap numba's thread pool; no-op on the numpy path."""
    os.environ["PANOMAP_WORKERS"] = str(int(n))
    if NUMBA_ENABLED:
        import numba

        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


if NUMBA_ENABLED:
    import numba

    numba.set_num_threads(max(1, min(num_threads(), numba.config.NUMBA_NUM_THREADS)))
