"""Symbolic-numeric toolkit for 3D path geometries with constant torsion.

Subpackages and modules:

* ``symcore``        exact expression engine (parse, normalize, diff, ...)
* ``jetfield``       vector fields on the extended jet space, Lie brackets
* ``invariants``     torsion/curvature of second-order ODE pairs
* ``laxlab``         horizontal frames and the two dispersionless Lax pairs
* ``lambdacollect``  spectral-coefficient collection, PDE systems, ideal
  membership
* ``verify``         end-to-end checks: solutions, cones, rulings, charts
* ``cli``            the ``torsion-lab`` command line
"""

__version__ = "0.1.0"
