"""Symplectic criteria for p-torsion isomorphisms of elliptic curves."""
