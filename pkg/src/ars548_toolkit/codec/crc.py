"""
CRC-16/CCITT-FALSE integrity check for frame payloads.

poly 0x1021, init 0xFFFF, no reflection, no final xor. ``binascii.crc_hqx``
is the same register with a caller-supplied initial value.
"""

from binascii import crc_hqx

CRC16_INIT = 0xFFFF


def crc16_ccitt_false(data: bytes | bytearray | memoryview) -> int:
    """Compute CRC-16/CCITT-FALSE over ``data``.

    Example:
        >>> hex(crc16_ccitt_false(b"123456789"))
        '0x29b1'
    """
    return crc_hqx(data, CRC16_INIT)
