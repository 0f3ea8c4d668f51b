"""Weakly multiplicative arithmetic functions and the normal growth of groups.

Submodules:

* :mod:`weakmult.sieve` -- primes, largest-prime-factor sieves, progressions
* :mod:`weakmult.constants` -- rigorous Euler-product brackets
* :mod:`weakmult.density` -- counting the set A and its partition
* :mod:`weakmult.arithfn` -- normal orders, essential limits, growth inequalities
* :mod:`weakmult.groups` -- subgroup growth of Z^r
* :mod:`weakmult.cli` -- batch front-end
"""

__version__ = "0.1.0"
