"""Hand-built sample diagrams used in tests and documentation."""

from __future__ import annotations

from .linkdiag import (Arc, Component, Crossing, FramedLinkDiagram, add_clasp,
                       add_split_unknot, require_valid)


def unknot(framing: int = 0) -> FramedLinkDiagram:
    d, _ = add_split_unknot(FramedLinkDiagram(), framing)
    return d


def unlink(framings) -> FramedLinkDiagram:
    d = FramedLinkDiagram()
    for f in framings:
        d, _ = add_split_unknot(d, f)
    return d


def hopf_link(framings=(0, 0), sign: int = 1) -> FramedLinkDiagram:
    """Two unknots clasped once; lk = sign."""
    d = unlink(framings)
    return add_clasp(d, 0, 1, sign)


def chain_link(framings) -> FramedLinkDiagram:
    """Open chain of unknots: consecutive components clasp with lk = +1."""
    d = unlink(framings)
    for i in range(len(list(framings)) - 1):
        d = add_clasp(d, i, i + 1, 1)
    return d


def trefoil(framing: int = 0) -> FramedLinkDiagram:
    """Right-handed trefoil as the closure of a three-crossing braid.

    Traversal from the basepoint meets the crossings over, under, over,
    so the descending switch set is a single crossing (unknotting
    number one).
    """
    d = FramedLinkDiagram(
        components=[Component(0, framing, basepoint=0)],
        arcs={a: Arc(owner=0, successor=(a + 1) % 6) for a in range(6)},
        crossings={
            0: Crossing(0, over_in=0, over_out=1, under_in=3, under_out=4, sign=1),
            1: Crossing(1, over_in=4, over_out=5, under_in=1, under_out=2, sign=1),
            2: Crossing(2, over_in=2, over_out=3, under_in=5, under_out=0, sign=1),
        })
    require_valid(d)
    return d


def e8_link() -> FramedLinkDiagram:
    """Plumbing link on the E8 tree, all framings 2: surgery gives the
    Poincare homology sphere.  Node order matches
    intlattice.e8_matrix."""
    d = unlink([2] * 8)
    for i, j in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]:
        d = add_clasp(d, i, j, 1)
    require_valid(d)
    return d
