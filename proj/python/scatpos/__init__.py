"""Half-line scattering transforms: solutions, kernels, positivity checks."""

try:
    from ._scatpos import *  # noqa: F401,F403
    from ._scatpos import __doc__ as _doc
except ImportError:  # in-tree builds put the extension on PYTHONPATH directly
    from _scatpos import *  # noqa: F401,F403
    from _scatpos import __doc__ as _doc

__doc__ = _doc
