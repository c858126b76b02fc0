"""Periodic traveling waves of regularized long-wave models.

Construction of exact elliptic-function waves for the regularized
Boussinesq system, the Benney-Luke equation, and the coupled BBM system;
Floquet spectra of the linearized operators by Fourier collocation; and
band/gap classification of the spectrum at infinity through Hill's
equation.
"""

__version__ = "0.1.0"
