# commbench
# Benchmark graphs with ground-truth communities, plus the measurement pipeline
__version__ = "0.1.0"
