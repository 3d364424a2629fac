from .base_repository import BaseRepository
from .claim_repository import ClaimDefinition, ClaimRepository, SeriesRef

__all__ = ["BaseRepository", "ClaimDefinition", "ClaimRepository", "SeriesRef"]
