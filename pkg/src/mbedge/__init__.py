"""Numerics for Muttalib-Borodin ensembles near the hard-to-soft edge transition.

Subpackages by topic:

* :mod:`mbedge.specialfn`   -- gamma, Airy, Meijer G and their oracles
* :mod:`mbedge.equilibrium` -- equilibrium measures via contour integrals
* :mod:`mbedge.limitmaps`   -- the limiting conformal map and its g-functions
* :mod:`mbedge.biorth`      -- finite-n biorthogonal polynomials and kernels
* :mod:`mbedge.kernels`     -- the universal hard-edge and Airy limit kernels
* :mod:`mbedge.chazy`       -- the theta = 2 Lax pair and Chazy-type equations
* :mod:`mbedge.cli`         -- batch command line driver
"""

__version__ = "0.1.0"
