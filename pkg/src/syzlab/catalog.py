"""Standard test hypersurfaces."""

from __future__ import annotations

from .nodal import NodeSet, chebyshev_hypersurface, chebyshev_node_set
from .poly import Poly


def fermat(n: int, d: int) -> Poly:
    """x_0^d + ... + x_n^d."""
    return Poly(n + 1, {tuple(d if i == j else 0 for i in range(n + 1)): 1 for j in range(n + 1)})


def one_node(n: int, d: int) -> Poly:
    """x_n^(d-2) (x_0^2 + ... + x_{n-1}^2) + x_0^d + ... + x_{n-1}^d.

    Its only singular point is the node (0 : ... : 0 : 1).
    """
    coeffs = {}
    for i in range(n):
        e = [0] * (n + 1)
        e[i], e[n] = 2, d - 2
        coeffs[tuple(e)] = 1
        e = [0] * (n + 1)
        e[i] = d
        coeffs[tuple(e)] = 1
    return Poly(n + 1, coeffs)


def one_node_point(n: int) -> NodeSet:
    return NodeSet(n + 1, ((0,) * n + (1,),))


def one_node_job(n: int, d: int):
    f = one_node(n, d)
    return f, one_node_point(n).verified(f)


__all__ = ["fermat", "one_node", "one_node_point", "one_node_job",
           "chebyshev_hypersurface", "chebyshev_node_set"]
