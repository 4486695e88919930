"""Turn one timestep of detection records into an ObservationFrame, and read
detection streams from disk."""

import json
import logging

from collections import defaultdict
from typing import Dict,Iterable,List

from vistawise.shared import CROSSHAIR,canonical_name,hotbar_key_at
from vistawise.exceptions import VistaPerceptionError
from .records import (DetectionRecord,EnvEntityInfo,InvEntityInfo,
                      ObservationFrame,RangeConfig,Space)
from .range import estimate_range

logger = logging.getLogger('vistawise.perception.partition')

def label_to_name(label: str, graph: 'CrossModalGraph' = None) -> str:
    """Map a detector label to an entity name. Graph aliases win, then the
    trailing '_icon' is stripped and the result canonicalized."""

    if graph is not None:
        resolved = graph.resolve_label(label)
        if resolved is not None:
            return resolved

    base = label[:-5] if label.endswith('_icon') else label
    return canonical_name(base)

def _preference(record: DetectionRecord):
    # Highest confidence first, then the larger box, then a value order so
    # the winner never depends on input order.
    return (record.confidence, record.w * record.h, -record.x, -record.y,
            -(record.count or 0))

def partition_observations(records: List[DetectionRecord], graph: 'CrossModalGraph' = None,
                           timestep: int = None, cfg: RangeConfig = None,
                           crosshair=CROSSHAIR) -> ObservationFrame:
    """Split a batch of detection records into the environment and inventory
    spaces, keeping one record per entity name.

    Args:
        records (list): Detection records of a single timestep
        graph (CrossModalGraph, optional): Used to resolve detector labels
            through its aliases
        timestep (int, optional): Frame timestep. Defaults to the records' own.
        cfg (RangeConfig, optional): Range thresholds

    Raises:
        VistaPerceptionError: a record violates the record invariants

    Returns:
        ObservationFrame: the partitioned frame
    """

    cfg = cfg or RangeConfig()
    best = {}

    for index, record in enumerate(records):
        record.check(index)
        name = label_to_name(record.label, graph)
        key = (record.space, name)

        if key not in best or _preference(record) > _preference(best[key][1]):
            best[key] = (index, record)

    env = []
    inv = []
    sources = []
    for (space, name), (index, record) in sorted(best.items(), key=lambda kv: (kv[0][0].value, kv[0][1])):
        sources.append((space.value, name, index))
        if space is Space.ENVIRONMENT:
            rng = estimate_range(record.w, record.h, cfg.for_label(name))
            env.append((name, EnvEntityInfo(record.x, record.y, record.w, record.h, rng)))
        else:
            inv.append((name, InvEntityInfo(record.x, record.y, record.count,
                                            hotbar_key_at(record.x, record.y))))

    if timestep is None:
        timestep = records[0].timestep if records else 0

    logger.debug(f"partitioned {len(records)} records into {len(env)} env and {len(inv)} inv entries")
    return ObservationFrame(timestep, tuple(env), tuple(inv), tuple(crosshair), tuple(sources))

def _integer(value) -> int:
    """int() that refuses fractional and boolean values."""

    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    if isinstance(value, float) and not value.is_integer():
        raise ValueError(f"expected an integer, got {value!r}")
    return int(value)

def parse_detection_line(line: str, index: int = None) -> DetectionRecord:
    """Parse one detection line, either `ts label space x y w h confidence
    [count]` or a JSON object with the same fields."""

    line = line.strip()
    try:
        if line.startswith('{'):
            data = json.loads(line)
            fields = (data['ts'], data['label'], data['space'], data['x'], data['y'],
                      data.get('w', 0), data.get('h', 0), data.get('confidence', 1.0),
                      data.get('count'))
        else:
            parts = line.split()
            if len(parts) not in (8, 9):
                raise ValueError(f"expected 8 or 9 fields, got {len(parts)}")
            fields = tuple(parts) + ((None,) if len(parts) == 8 else ())

        ts, label, space, x, y, w, h, confidence, count = fields
        record = DetectionRecord(label=str(label), space=Space(space), x=_integer(x), y=_integer(y),
                                 w=_integer(w), h=_integer(h), confidence=float(confidence),
                                 count=None if count is None else _integer(count),
                                 timestep=_integer(ts))
    except (ValueError, KeyError, TypeError) as err:
        raise VistaPerceptionError(f"record {index}: {err}", index=index)

    record.check(index)
    return record

def read_detections(lines: Iterable[str]) -> Dict[int, List[DetectionRecord]]:
    """Read a detection stream and group its records by timestep. Blank
    lines and '#' comments are ignored."""

    frames = defaultdict(list)
    for index, line in enumerate(lines):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        record = parse_detection_line(line, index)
        frames[record.timestep].append(record)

    return dict(sorted(frames.items()))
