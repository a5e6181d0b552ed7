"""Command-line interface for ksmetric."""
