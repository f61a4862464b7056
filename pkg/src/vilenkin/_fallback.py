"""Pure-numpy version of the compiled butterfly in ``_kernel.pyx``."""
import numpy as np


def tensor_dft(a, p, n, sign):
    """In-place unnormalized p-point DFT along each of the ``n`` digit axes."""
    if n == 0:
        return
    t = a.reshape((p,) * n)
    if sign < 0:
        out = np.fft.fftn(t)
    else:
        out = np.fft.ifftn(t) * (p ** n)
    a[:] = out.reshape(-1)
