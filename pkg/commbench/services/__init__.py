"""Services package for generation, measurement and detection."""
