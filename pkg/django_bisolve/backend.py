import os

# Big-integer backend for the hot kernels (Taylor shifts, homogenized Horner,
# Kronecker products). MPZ defaults to Python's int; gmpy2.mpz is used when
# installed unless BISOLVE_NOGMPY is set. Kernels convert back with int()
# before returning, so nothing outside them ever sees an mpz.

BACKEND = "python"
MPZ = int

NOGMPY_ENV_VAR = "BISOLVE_NOGMPY"

if NOGMPY_ENV_VAR not in os.environ:
    try:
        import gmpy2

        BACKEND = "gmpy"
        MPZ = gmpy2.mpz
    except ImportError:
        pass
