"""Planar Poisson problems with distributional data."""

try:
    # Installed layout: the compiled module sits inside this package.
    from ._distpot import (
        ConfigError,
        __version__,
        check_compat_json,
        eval_expression,
        solve_json,
        steklov_circle_demo,
        verify,
    )
except ImportError:
    # Build-tree layout: the compiled module is on PYTHONPATH by itself.
    from _distpot import (
        ConfigError,
        __version__,
        check_compat_json,
        eval_expression,
        solve_json,
        steklov_circle_demo,
        verify,
    )

__all__ = [
    "ConfigError",
    "__version__",
    "check_compat_json",
    "eval_expression",
    "solve_json",
    "steklov_circle_demo",
    "verify",
]
