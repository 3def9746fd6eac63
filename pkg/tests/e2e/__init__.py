"""
UDP loopback and command line end-to-end tests.
"""
