import os


def _env_bool(name: str, default: str = 'false') -> bool:
    return os.environ.get(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Base configuration shared across environments."""

    LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO").upper()

    # Worker pool for block diagonalization, scans and chunked matvec
    TOPOISING_THREADS = int(os.environ.get("TOPOISING_THREADS", os.cpu_count() or 1))

    # Eigensolver thresholds
    DENSE_MAX_DIM = int(os.environ.get("DENSE_MAX_DIM", 4096))
    BLOCK_DENSE_MAX_DIM = int(os.environ.get("BLOCK_DENSE_MAX_DIM", 512))
    ARPACK_TOL = float(os.environ.get("ARPACK_TOL", 0.0))  # 0 means machine precision
    ARPACK_MAXITER = int(os.environ["ARPACK_MAXITER"]) if os.environ.get("ARPACK_MAXITER") else None

    # Matvec is split into chunks above this dimension when more than one worker is allowed
    MATVEC_CHUNK_MIN_DIM = int(os.environ.get("MATVEC_CHUNK_MIN_DIM", 1 << 16))

    # Real-spin dimension the command line refuses without --force
    REAL_DIM_GUARD = int(os.environ.get("REAL_DIM_GUARD", 1 << 20))

    EQUIVALENCE_TOL = float(os.environ.get("EQUIVALENCE_TOL", 1e-7))

    TOPOISING_PRECISE_CRITICAL = _env_bool("TOPOISING_PRECISE_CRITICAL")

    # Lattice size used when reproducing the transition table
    TABLE_SIZE = int(os.environ.get("TABLE_SIZE", 6))


class DevelopmentConfig(Config):
    DEBUG = True
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "DEBUG").upper()


class ProductionConfig(Config):
    DEBUG = False


class TestingConfig(Config):
    TESTING = True
    TOPOISING_THREADS = 2
    TOPOISING_PRECISE_CRITICAL = False
