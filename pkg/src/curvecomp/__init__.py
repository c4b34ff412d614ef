"""curvecomp: exact and numerical tools around curve-complement hyperbolicity.

Subpackages by topic:

* :mod:`curvecomp.expfun`     -- exact algebra of exponential polynomials
* :mod:`curvecomp.nevanlinna` -- growth functionals and main-theorem checks
* :mod:`curvecomp.chern`      -- logarithmic Chern numbers of complete
  intersections carrying three-component curves, and the classifiers
* :mod:`curvecomp.borel`      -- the exponential-identity degeneracy engine
* :mod:`curvecomp.covering`   -- cyclic-cover push-down of symmetric forms
* :mod:`curvecomp.planeconf`  -- plane-curve intersection/genericity checks
* :mod:`curvecomp.cli`        -- JSON command-line front end
"""

__version__ = "0.1.0"
