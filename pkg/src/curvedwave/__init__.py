"""Free quantum particle on three-dimensional spaces of constant curvature.

Closed-form radial solutions on the sphere (kappa > 0) and hyperbolic space
(kappa < 0), their spectrum and orthogonality, the flat-space limit, and
numerical oracles that check all of it independently.
"""

__version__ = "0.1.0"
