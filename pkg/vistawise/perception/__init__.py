"""Perception: detection records in, observation frames out.

Detection is abstracted as a record stream; this package is the adapter
boundary for any real detector."""

from .records import (Space,RangeEstimate,DetectionRecord,RangeConfig,
                      EnvEntityInfo,InvEntityInfo,ObservationFrame)
from .range import estimate_range
from .partition import (partition_observations,label_to_name,
                        parse_detection_line,read_detections)
