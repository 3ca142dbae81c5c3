from .models import RunConfig
from .repository import RunRepository, run_repository, atomic_write

__all__ = ["RunConfig", "RunRepository", "run_repository", "atomic_write"]
