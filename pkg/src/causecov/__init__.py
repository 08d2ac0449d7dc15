"""Causality, responsibility and coverage analysis for model checking."""
