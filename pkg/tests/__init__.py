"""Test package for ksmetric."""
