"""Integer chain complexes, Smith normal form and cubical abelian groups."""

from .complexes import ChainComplex, HomologyGroup, homology, homology_all
from .cubical import CubicalGroup
from .snf import smith_normal_form

__all__ = ["ChainComplex", "HomologyGroup", "homology", "homology_all", "CubicalGroup", "smith_normal_form"]
