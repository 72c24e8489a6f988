"""The builtin group corpus the verification commands sweep by default.

One description per isomorphism class of order <= 24 reachable through the
named families of the group language (cyclics and their products, symmetric,
alternating, dihedral, Q8, SL(2,3)), plus PSL(2,4) and PSL(2,5).  Compiled
in as strings so the default corpus needs no data files and stays
reproducible.
"""

from .gspec import realize

BUILTIN_CATALOG = (
    "C1",
    "C2",
    "C3",
    "C4", "C2^2",
    "C5",
    "C6", "S3",
    "C7",
    "C8", "C4 x C2", "C2^3", "D4", "Q8",
    "C9", "C3^2",
    "C10", "D5",
    "C11",
    "C12", "C6 x C2", "A4", "D6",
    "C13",
    "C14", "D7",
    "C15",
    "C16", "C8 x C2", "C4^2", "C4 x C2^2", "C2^4", "D8", "D4 x C2", "Q8 x C2",
    "C17",
    "C18", "C6 x C3", "D9", "S3 x C3",
    "C19",
    "C20", "C10 x C2", "D10",
    "C21",
    "C22", "D11",
    "C23",
    "C24", "C12 x C2", "C6 x C2^2", "S4", "A4 x C2", "D12",
    "D4 x C3", "Q8 x C3", "S3 x C4", "S3 x C2^2", "SL(2,3)",
    "PSL(2,4)", "PSL(2,5)",
)


def builtin_groups(cap=None):
    """Realize the builtin catalog, in order."""
    return [realize(text, cap=cap) for text in BUILTIN_CATALOG]


def abelian_invariant_factor_sequences(max_order):
    """Every d_1 | d_2 | ... | d_k with product <= max_order (d_i >= 2).

    One sequence per isomorphism class of nontrivial abelian group of order
    up to max_order, plus the empty sequence for the trivial group.
    """
    out = [[]]

    def grow(prefix, product):
        start = prefix[-1] if prefix else 2
        d = start
        while product * d <= max_order:
            if not prefix or d % prefix[-1] == 0:
                seq = prefix + [d]
                out.append(seq)
                grow(seq, product * d)
            d += 1

    grow([], 1)
    return sorted(out, key=lambda s: (len(s), s))


__all__ = ["BUILTIN_CATALOG", "builtin_groups", "abelian_invariant_factor_sequences"]
