"""Klein bottles and projective planes in lens spaces, computed exactly."""

__version__ = "0.1.0"

from .lens_core import (Basis, EmbeddabilityVerdict, GluingMatrix, LensSpace, Sign,
                        TorusClass, apply_gluing, are_homeomorphic, deck_generator,
                        heegaard_gluing, klein_bottle_embeds, normalize,
                        projective_plane_embeds)
from .abelian import AbelianGroup, cokernel, dehn_filling_H1, smith_normal_form
from .groups import (MetacyclicTable, Presentation, abelianization, build_metacyclic_table,
                     dehn_filling_presentation, klein_bottle_group)
