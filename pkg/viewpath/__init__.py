"""viewpath - entropy-driven viewpoint selection and camera paths for in-situ visualization."""
