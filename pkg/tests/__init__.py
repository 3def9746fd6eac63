"""
Test suite for ars548-toolkit.
"""
