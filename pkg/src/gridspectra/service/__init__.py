"""HTTP service layer: FastAPI app plus the shared request handlers."""
