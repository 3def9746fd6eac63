"""
ars548-toolkit - driver, simulator and tools for the Continental ARS 548 RDI
long-range radar.

This package provides the following components:
- Bit-exact codec for the sensor's UDP frames (status, objects, detections,
  configuration)
- UDP receive loop with time stamp policies and configuration requests
- Composable object/detection filters and point cloud export (CSV, PCD, JSONL)
- Scenario-driven sensor simulator for desk-side testing
- Datagram recorder with timed replay
"""

__version__ = "0.1.0"
