import numpy as np


def stream(seed, index):
    """Counter-based generator for stream ``index`` of ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
