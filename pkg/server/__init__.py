"""HTTP surface over the relqhe engine (FastAPI)."""
