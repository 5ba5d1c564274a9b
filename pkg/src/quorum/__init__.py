"""quorum: diverse test-time inference with verification and aggregation.

Run many solvers and inference strategies on reasoning tasks, verify
candidate answers where a perfect check exists (puzzle train pairs,
exact game solvers, reference answers), and aggregate verified results
across solvers by logical OR.
"""

__version__ = "0.1.0"
