import os

DEFAULT_TOL = 1e-10


def global_tol(override=None):
    """Shared rank/sign threshold; ``HRLAB_TOL`` in the environment replaces 1e-10."""
    if override is not None:
        return float(override)
    env = os.environ.get("HRLAB_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL
