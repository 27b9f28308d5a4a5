"""
Instance files: JSON documents with every rational written as a "p/q" string

    {
      "maps": [{"a": [["1/2", "0"], ["0", "1/2"]], "b": ["1", "0"]}, ...],
      "epsilon": "1/2",
      "n": 3,
      "x0": [0, 0],
      "target": [1, 0],            optional
      "noise_denominator": 4096,   optional
      "seeds": {"noise": 7}        optional
    }
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional
import json
import logging

from dynamics.affine import NoiseBound, TransformSet, make_affine_map
from dynamics.lattice import LatticePoint
from dynamics.scalar import format_scalar, to_scalar
from errors import ParseError, SpipError
from pathspace.instance import SpipInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceFile:
    instance: SpipInstance
    seeds: Dict[str, int] = field(default_factory=dict)


def _scalar(value, path):
    if isinstance(value, float):
        raise ParseError("floats are not accepted, write rationals as \"p/q\" strings", path)
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {value!r} ({e})", path)


def _point(value, path) -> LatticePoint:
    if not (isinstance(value, list) and len(value) == 2
            and all(isinstance(c, int) and not isinstance(c, bool) for c in value)):
        raise ParseError(f"expected [x, y] integers, got {value!r}", path)
    return LatticePoint(*value)


def _require(doc: Dict[str, Any], key: str, path: str):
    if key not in doc:
        raise ParseError(f"missing key '{key}'", path)
    return doc[key]


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}")
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")

    raw_maps = _require(doc, 'maps', '$')
    if not isinstance(raw_maps, list) or not raw_maps:
        raise ParseError("expected a non-empty list of maps", "$.maps")
    maps = []
    for index, raw in enumerate(raw_maps):
        path = f"$.maps[{index}]"
        if not isinstance(raw, dict):
            raise ParseError("expected an object with 'a' and 'b'", path)
        rows = _require(raw, 'a', path)
        if not (isinstance(rows, list) and len(rows) == 2
                and all(isinstance(r, list) and len(r) == 2 for r in rows)):
            raise ParseError("expected a 2x2 matrix", f"{path}.a")
        a = [[_scalar(c, f"{path}.a[{i}][{j}]") for j, c in enumerate(row)] for i, row in enumerate(rows)]
        offset = _require(raw, 'b', path)
        if not (isinstance(offset, list) and len(offset) == 2):
            raise ParseError("expected a 2-vector", f"{path}.b")
        b = [_scalar(c, f"{path}.b[{i}]") for i, c in enumerate(offset)]
        try:
            maps.append(make_affine_map(a, b))
        except SpipError as e:
            raise ParseError(str(e), path)

    epsilon = _scalar(_require(doc, 'epsilon', '$'), '$.epsilon')
    n = _require(doc, 'n', '$')
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"expected a non-negative integer, got {n!r}", '$.n')
    x0 = _point(_require(doc, 'x0', '$'), '$.x0')
    target = _point(doc['target'], '$.target') if doc.get('target') is not None else None
    seeds = doc.get('seeds', {})
    if not isinstance(seeds, dict) or not all(isinstance(v, int) for v in seeds.values()):
        raise ParseError("expected an object of integer seeds", '$.seeds')

    denominator = doc.get('noise_denominator')
    if 'noise_denominator' in doc and (not isinstance(denominator, int) or isinstance(denominator, bool)
                                       or denominator < 1):
        raise ParseError(f"expected a positive integer, got {denominator!r}", '$.noise_denominator')

    try:
        noise = NoiseBound(epsilon) if denominator is None else NoiseBound(epsilon, denominator)
        instance = SpipInstance(TransformSet(tuple(maps)), noise, n, x0, target)
    except SpipError as e:
        raise ParseError(str(e), '$')
    return InstanceFile(instance, dict(seeds))


def load_instance(path) -> InstanceFile:
    logger.debug(f"Loading instance from {path}")
    try:
        return parse_instance(Path(path).read_text())
    except ParseError as e:
        logger.error(f"Error parsing {path}: {e}")
        raise


def dump_instance(instance: SpipInstance, seeds: Optional[Dict[str, int]] = None) -> str:
    doc = {
        'maps': [
            {'a': [[format_scalar(affine.a[0]), format_scalar(affine.a[1])],
                   [format_scalar(affine.a[2]), format_scalar(affine.a[3])]],
             'b': [format_scalar(c) for c in affine.b]}
            for affine in instance.ts.maps
        ],
        'epsilon': format_scalar(instance.noise.epsilon),
        'n': instance.n,
        'x0': list(instance.x0),
        'noise_denominator': instance.noise.sample_denominator,
    }
    if instance.target is not None:
        doc['target'] = list(instance.target)
    if seeds:
        doc['seeds'] = dict(seeds)
    return json.dumps(doc, indent=2)
