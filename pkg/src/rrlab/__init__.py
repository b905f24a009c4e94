"""Rogers-Ramanujan type identities from Hall-Littlewood polynomials and their CM values."""

__version__ = "0.1.0"
