"""
Typed environment variable loader.

All toolkit settings live under one prefix (``ARS548_`` by default) so they
do not collide with other tools sharing the shell or the ``.env`` file.
"""

import os
from ipaddress import AddressValueError, IPv4Address


class EnvLoader:
    """Environment variable loader with type conversion and a name prefix."""

    def __init__(self, prefix: str = "ARS548_") -> None:
        self.prefix = prefix

    def _key(self, key: str) -> str:
        return key if key.startswith(self.prefix) else f"{self.prefix}{key}"

    def _raw(self, key: str) -> str | None:
        return os.getenv(self._key(key))

    def get_str(self, key: str, default: str = "", required: bool = False) -> str:
        """Load string environment variable.

        Args:
            key: Variable name, with or without the prefix
            default: Default value if not set
            required: Raise error if not set

        Returns:
            String value or default

        Raises:
            ValueError: If required and not set
        """
        value = self._raw(key)
        if value is None or value == "":
            if required:
                raise ValueError(
                    f"Required environment variable '{self._key(key)}' is not set"
                )
            return default
        return value

    def get_int(self, key: str, default: int = 0, required: bool = False) -> int:
        """Load integer environment variable; invalid values yield the default."""
        value = self._raw(key)
        if value is None:
            if required:
                raise ValueError(
                    f"Required environment variable '{self._key(key)}' is not set"
                )
            return default
        try:
            return int(value)
        except ValueError:
            if required:
                raise ValueError(f"Invalid integer value for '{self._key(key)}': {value}")
            return default

    def get_float(self, key: str, default: float = 0.0, required: bool = False) -> float:
        """Load float environment variable; invalid values yield the default."""
        value = self._raw(key)
        if value is None:
            if required:
                raise ValueError(
                    f"Required environment variable '{self._key(key)}' is not set"
                )
            return default
        try:
            return float(value)
        except ValueError:
            if required:
                raise ValueError(f"Invalid float value for '{self._key(key)}': {value}")
            return default

    def get_bool(self, key: str, default: bool = False, required: bool = False) -> bool:
        """Load boolean environment variable (true/false, 1/0, yes/no, on/off)."""
        value = (self._raw(key) or "").strip().lower()
        if value in ("true", "1", "yes", "on"):
            return True
        if value in ("false", "0", "no", "off"):
            return False
        if required:
            raise ValueError(f"Invalid boolean value for '{self._key(key)}': {value}")
        return default

    def get_choice(
        self,
        key: str,
        choices: tuple[str, ...],
        default: str,
        required: bool = False,
    ) -> str:
        """Load a lower-cased value restricted to ``choices``."""
        value = self.get_str(key, default, required).strip().lower()
        if value in choices:
            return value
        if required:
            raise ValueError(
                f"Invalid value for '{self._key(key)}': {value} "
                f"(expected one of {', '.join(choices)})"
            )
        return default

    def get_port(self, key: str, default: int, required: bool = False) -> int:
        """Load a UDP/TCP port number in 1..65535."""
        port = self.get_int(key, default, required)
        if 0 < port < 65536:
            return port
        if required:
            raise ValueError(f"Invalid port for '{self._key(key)}': {port}")
        return default

    def get_ipv4(self, key: str, default: str = "", required: bool = False) -> str:
        """Load a dotted-quad IPv4 address.

        A variable set to an empty string yields ``""`` rather than the
        default, so a multicast group can be switched off from ``.env``.
        """
        raw = self._raw(key)
        if raw is not None and not raw.strip() and not required:
            return ""
        value = self.get_str(key, default, required).strip()
        if not value:
            return value
        try:
            return str(IPv4Address(value))
        except AddressValueError:
            if required:
                raise ValueError(f"Invalid IPv4 address for '{self._key(key)}': {value}")
            return default
