"""Explicit Klein bottles: fibrations, cut-and-paste constructions, meshes."""
from .constructions import (ConstructionReport, HandleLayout, handle_boundary_class,
                            handle_layout, handles_construction, klein_gluing,
                            klein_in_s1xs2, moebius_boundary_trace, moebius_in_solid_torus,
                            seifert_construction, two_moebius_construction, winding_numbers)
from .fibration import (Base, FiberCurve, NuKModel, SeifertDescriptor, fiber_through,
                        heegaard_identification_from_fibration, seifert_over_rp2,
                        seifert_over_s2)
from .lens_model import (InjectivityReport, Mesh3D, QuotientMesh, SeamVerificationError,
                         canonicalize_array, corrupt_seam, embedded_injectivity_check,
                         klein_lens_embedding, klein_map, lens_fundamental_domain_canonicalize,
                         stereographic_export, stereographic_inverse, stereographic_project,
                         verify_seams)

__all__ = [
    "ConstructionReport", "HandleLayout", "handle_boundary_class", "handle_layout",
    "handles_construction", "klein_gluing", "klein_in_s1xs2", "moebius_boundary_trace",
    "moebius_in_solid_torus", "seifert_construction", "two_moebius_construction",
    "winding_numbers", "Base", "FiberCurve", "NuKModel", "SeifertDescriptor",
    "fiber_through", "heegaard_identification_from_fibration", "seifert_over_rp2",
    "seifert_over_s2", "InjectivityReport", "Mesh3D", "QuotientMesh",
    "SeamVerificationError", "canonicalize_array", "corrupt_seam",
    "embedded_injectivity_check", "klein_lens_embedding", "klein_map",
    "lens_fundamental_domain_canonicalize", "stereographic_export",
    "stereographic_inverse", "stereographic_project", "verify_seams",
]
