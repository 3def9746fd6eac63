"""
Unit tests for ars548-toolkit.
"""
