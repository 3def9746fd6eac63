"""
Configuration settings for the toolkit.
"""

import logging
from ipaddress import IPv4Address, IPv4Network

from dotenv import load_dotenv

from .env_loader import EnvLoader

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

_env = EnvLoader("ARS548_")

MULTICAST_NETWORK = IPv4Network("224.0.0.0/4")
LOG_LEVELS = ("error", "warn", "warning", "info", "debug")
STAMP_POLICIES = ("keep", "local")


class Config:
    """Configuration class for the ARS 548 toolkit"""

    # Network endpoints of the sensor
    LISTEN_PORT: int = _env.get_port("LISTEN_PORT", 42102)
    MULTICAST_GROUP: str = _env.get_ipv4("MULTICAST_GROUP", "224.0.2.2")
    INTERFACE_ADDRESS: str = _env.get_ipv4("INTERFACE_ADDRESS", "")
    SENSOR_ADDRESS: str = _env.get_ipv4("SENSOR_ADDRESS", "10.13.1.113")
    CONFIG_PORT: int = _env.get_port("CONFIG_PORT", 42101)

    # Driver behaviour
    STAMP_POLICY: str = _env.get_choice("STAMP_POLICY", STAMP_POLICIES, "local")
    ACK_TIMEOUT_S: float = _env.get_float("ACK_TIMEOUT_S", 2.0)
    RECV_BUFFER_SIZE: int = _env.get_int("RECV_BUFFER_SIZE", 65535)

    # Logging
    LOG_LEVEL: str = _env.get_choice("TOOLKIT_LOG", LOG_LEVELS, "warn")
    LOG_FILE: str = _env.get_str("TOOLKIT_LOG_FILE", "")

    # Simulator defaults
    STATUS_EVERY_CYCLES: int = _env.get_int("STATUS_EVERY_CYCLES", 10)

    # Defaults for radar parameters the CLI does not receive explicitly
    DEFAULT_CYCLE_TIME_MS: int = _env.get_int("DEFAULT_CYCLE_TIME_MS", 50)
    DEFAULT_MAX_DISTANCE_M: int = _env.get_int("DEFAULT_MAX_DISTANCE_M", 300)

    # Optional stats endpoint of the listener
    API_HOST: str = _env.get_ipv4("API_HOST", "127.0.0.1")

    @classmethod
    def validate_config(cls) -> bool:
        """Validate configuration"""
        if not cls.LISTEN_PORT or not cls.CONFIG_PORT:
            logger.error("❌ LISTEN_PORT and CONFIG_PORT must be nonzero")
            return False

        if cls.MULTICAST_GROUP and IPv4Address(cls.MULTICAST_GROUP) not in MULTICAST_NETWORK:
            logger.error(f"❌ MULTICAST_GROUP {cls.MULTICAST_GROUP} is not in 224.0.0.0/4")
            return False

        if cls.STAMP_POLICY not in STAMP_POLICIES:
            logger.error(f"❌ Unknown STAMP_POLICY: {cls.STAMP_POLICY}")
            return False

        if cls.ACK_TIMEOUT_S <= 0:
            logger.error("❌ ACK_TIMEOUT_S must be positive")
            return False

        return True
