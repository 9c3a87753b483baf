"""
Version string, derived from git by setuptools_scm
"""
import warnings


__all__ = ["__version__"]


def _resolve_version():
    try:
        # development checkouts resolve the version live
        from ._dev_version import version
        return version
    except ImportError:
        pass

    try:
        from ._version import version
        return version
    except ImportError:
        warnings.warn(
            "Could not determine the pybeamtrack version; install pybeamtrack"
            " with pip from its git repository so that setuptools_scm can derive it."
        )
        return "0.0.0"


__version__ = _resolve_version()
