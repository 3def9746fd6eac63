"""API module - optional HTTP view of a running listener."""
