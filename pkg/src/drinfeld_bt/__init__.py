"""Bruhat-Tits building invariants of Drinfeld modular forms.

Spectral norms of para-Eisenstein series and coefficient forms on the Weyl
chamber, the complexes W(k), van der Put transforms on type-1 arrows, local
inner degrees, and finite-field oracles for them.
"""

from .core_params import ArtifactError, ConsistencyError, Context, ValidationError, make_context

__version__ = "0.1.0"

__all__ = ["ArtifactError", "ConsistencyError", "Context", "ValidationError", "make_context", "__version__"]
