"""Python interface to the kgforge toolkit.

The compiled extension carries the actual implementations; this package
re-exports them. When built and installed (pip), the extension sits inside
the package; in a plain CMake build it is importable off PYTHONPATH.
"""

try:
    from ._kgforge import *  # noqa: F401,F403
    from ._kgforge import __version__  # noqa: F401
except ImportError:  # pragma: no cover - CMake build layout
    from _kgforge import *  # noqa: F401,F403
    from _kgforge import __version__  # noqa: F401
