"""Exact r-th root probabilities in finite groups.

Core quantity: the share |G^r| / |G| of elements with at least one r-th
root, always an exact rational.  Submodules: fields (GF(p^f) tables),
groups (enumerated finite groups), roots (power images and the
verification engine), psl2 (matrix groups and the closed form), density
(target-approximation traces), gspec (the group description language),
catalog (builtin corpus), cli (command line).
"""

__version__ = "0.1.0"
