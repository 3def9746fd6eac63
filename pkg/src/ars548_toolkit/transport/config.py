"""
Network endpoints of the driver.
"""

from dataclasses import dataclass, field
from ipaddress import IPv4Address

from ..config.settings import MULTICAST_NETWORK, Config
from ..model import Endpoint, StampPolicy


@dataclass(frozen=True, slots=True)
class TransportConfig:
    """Where sensor data arrives and where configuration is sent.

    Defaults come from ``Config`` (environment / ``.env``). An empty or
    ``None`` multicast group means plain unicast reception.
    """

    listen_port: int = field(default_factory=lambda: Config.LISTEN_PORT)
    multicast_group: str | None = field(default_factory=lambda: Config.MULTICAST_GROUP)
    interface_address: str | None = field(
        default_factory=lambda: Config.INTERFACE_ADDRESS
    )
    sensor_address: str = field(default_factory=lambda: Config.SENSOR_ADDRESS)
    config_port: int = field(default_factory=lambda: Config.CONFIG_PORT)
    stamp_policy: StampPolicy = field(
        default_factory=lambda: StampPolicy(Config.STAMP_POLICY)
    )
    ack_timeout_s: float = field(default_factory=lambda: Config.ACK_TIMEOUT_S)
    recv_buffer_size: int = field(default_factory=lambda: Config.RECV_BUFFER_SIZE)

    def __post_init__(self) -> None:
        for name in ("listen_port", "config_port"):
            port = getattr(self, name)
            if not 0 < port < 65536:
                raise ValueError(f"{name} must be in 1..65535, got {port}")
        if not self.multicast_group:
            object.__setattr__(self, "multicast_group", None)
        elif IPv4Address(self.multicast_group) not in MULTICAST_NETWORK:
            raise ValueError(f"multicast group {self.multicast_group} is not in 224.0.0.0/4")
        if not self.interface_address:
            object.__setattr__(self, "interface_address", None)
        else:
            IPv4Address(self.interface_address)
        IPv4Address(self.sensor_address)
        object.__setattr__(self, "stamp_policy", StampPolicy(self.stamp_policy))
        if not self.ack_timeout_s > 0:
            raise ValueError(f"ack_timeout_s must be positive, got {self.ack_timeout_s}")

    @property
    def sensor_endpoint(self) -> Endpoint:
        return Endpoint(self.sensor_address, self.config_port)
