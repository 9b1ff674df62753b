"""Exact checkers for freeness of vector families moved by an operator.

Submodules:

* ``ratlin``: rational vectors, matrices, rank, spans, dependence witnesses
* ``selfmap``: eventually-affine self-maps of the naturals and their orbits
* ``ordercore``: finite preorders, semilattices, projections, bound checks
* ``sigma``: finite algebraic structures and term closure
* ``shiftcheck``: tail collapse and independence transfer for shifted families
* ``factory``: dependent families for maps without a full orbit
* ``genprop``: the relation-controlled criterion on finite windows
* ``cli``: the ``shiftfree`` command
"""

__version__ = "0.1.0"
