"""Cordial labelings of paths and cycles over finite abelian groups."""

from .groups import GroupElement, GroupSpec, make_group, parse_group

__all__ = ["GroupElement", "GroupSpec", "make_group", "parse_group"]
__version__ = "0.1.0"
