"""Combinatorial derived categories of gentle algebras.

The package computes, for a finite dimensional gentle algebra given by a
quiver with relations:

* the projective path basis and validity diagnostics (presentation),
* graded string/band/infinite-string complexes (strings),
* explicit bases of morphism spaces between them (homs),
* an independent finite-field chain-complex oracle (oracle),
* the marked ribbon surface model with arc dictionaries (surface),
* semiorthogonal decompositions via good cuts of the surface (cuts),
* a command line front end (cli).
"""

__version__ = "0.1.0"
