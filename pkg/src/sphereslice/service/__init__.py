"""HTTP service package; the FastAPI instance lives in sphereslice.service.app."""
