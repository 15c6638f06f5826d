"""Nakajima categories, periodic complexes of projectives and their Hall algebras.

Modules:

- ``coeffs``: Laurent polynomials, a + b sqrt(q) numbers, rational functions in t.
- ``dynkin``: Dynkin quivers, indecomposable modules, AR translation, derived objects.
- ``nakajima``: configurations, the orbit quiver ZQ_C/F and presentations of R, S, P.
- ``twocomp``: n-periodic complexes of projectives, Hom/Ext, decomposition, psi.
- ``hallnum``: Hall numbers by Ext enumeration and Hall polynomials by interpolation.
- ``shalgebra``: the localized twisted Hall algebra and the quantum group relations.
- ``strat``: restriction, Kan extensions, K_LR, CK, strata and Gorenstein projectivity.
- ``cli``: the batch command line front-end.
"""

__version__ = "0.1.0"
