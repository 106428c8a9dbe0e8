# -*- coding: utf-8 -*-

"""JSON Lines formats of detections, annotations and volume inventories.

Every record is checked against a JSON schema first, then by the domain
types. Errors are addressed by file, line and field.
Serialization is canonical: schema key order, one record per line.
Numbers keep their parsed type, so integer coordinates stay integers.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import (
    Tuple, List, Dict, Mapping, Iterator, Iterable, Any, Optional,
)
from json import loads, dumps
from jsonschema import Draft7Validator
from jsonschema.exceptions import ValidationError as SchemaError, best_match
from lncad.errors import (
    ContractError, ValidationError, RecordParseError, ReferentialError,
)
from lncad.geometry import Box2D
from lncad.fusion.detection import Detection, DEFAULT_LABEL
from lncad.fusion.dataset import DetectionDataset, check_detection
from lncad.evaluation.annotation import LesionAnnotation
from lncad.evaluation.dataset import AnnotationDataset

_Dims = Tuple[int, int, int]
_BBOX = {
    'type': 'array',
    'items': {'type': 'number'},
    'minItems': 4,
    'maxItems': 4,
}
_ID = {'type': 'string', 'minLength': 1}
_SLICE = {'type': 'integer', 'minimum': 0}
DETECTION_SCHEMA = {
    'type': 'object',
    'properties': {
        'volume_id': _ID,
        'slice_index': _SLICE,
        'bbox': _BBOX,
        'score': {'type': 'number', 'minimum': 0, 'maximum': 1},
        'model_id': _ID,
        'label': _ID,
    },
    'required': ['volume_id', 'slice_index', 'bbox', 'score', 'model_id'],
    'additionalProperties': False,
}
ANNOTATION_SCHEMA = {
    'type': 'object',
    'properties': {
        'volume_id': _ID,
        'lesion_id': _ID,
        'slice_index': _SLICE,
        'bbox': _BBOX,
        'key_slice': {'type': 'boolean'},
    },
    'required': ['volume_id', 'lesion_id', 'slice_index', 'bbox'],
    'additionalProperties': False,
}
INVENTORY_SCHEMA = {
    'type': 'object',
    'properties': {
        'volume_id': _ID,
        'dims': {
            'type': 'array',
            'items': {'type': 'integer', 'minimum': 1},
            'minItems': 3,
            'maxItems': 3,
        },
    },
    'required': ['volume_id', 'dims'],
    'additionalProperties': False,
}


def _reject_constant(name: str) -> None:
    raise ValueError(f"non-finite number {name}")


def _error_field(error: SchemaError, schema: Mapping[str, Any]) -> str:
    """Name the record field of a schema error."""
    if error.path:
        return str(error.path[0])
    instance = error.instance
    if error.validator == 'required' and isinstance(instance, dict):
        for name in error.validator_value:
            if name not in instance:
                return name
    if error.validator == 'additionalProperties' and isinstance(instance, dict):
        for name in instance:
            if name not in schema['properties']:
                return name
    return "(root)"


def _records(path: str, schema: Mapping[str, Any]) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yield schema-valid objects with their line numbers."""
    validator = Draft7Validator(schema)
    with open(path, 'rb') as f:
        for n, raw in enumerate(f, 1):
            try:
                line = raw.decode('utf-8')
            except UnicodeDecodeError as e:
                raise RecordParseError(f"invalid UTF-8: {e}",
                                       path=path, line=n) from e
            if not line.strip():
                continue
            try:
                obj = loads(line, parse_constant=_reject_constant)
            except ValueError as e:
                raise RecordParseError(f"invalid JSON: {e}",
                                       path=path, line=n) from e
            if not isinstance(obj, dict):
                raise RecordParseError("record is not a JSON object",
                                       path=path, line=n)
            error = best_match(validator.iter_errors(obj))
            if error is not None:
                raise ValidationError(error.message, path=path, line=n,
                                      field=_error_field(error, schema))
            yield n, obj


def _box(obj: Mapping[str, Any], path: str, n: int) -> Box2D:
    try:
        return Box2D.from_sequence(obj['bbox'])
    except ContractError as e:
        raise ValidationError(str(e), path=path, line=n, field='bbox') from e


def _readdress(e: ValidationError, path: str, n: int) -> ValidationError:
    return type(e)(e.message, path=path, line=n, field=e.field)


def read_volume_dims(path: str) -> Dict[str, _Dims]:
    """Volume dimensions (nx, ny, nz) by volume id."""
    dims: Dict[str, _Dims] = {}
    for n, obj in _records(path, INVENTORY_SCHEMA):
        vid = obj['volume_id']
        if vid in dims:
            raise ValidationError(f"duplicate volume {vid!r}",
                                  path=path, line=n, field='volume_id')
        nx, ny, nz = (int(d) for d in obj['dims'])
        dims[vid] = (nx, ny, nz)
    return dims


def slice_counts(dims: Mapping[str, _Dims]) -> Dict[str, int]:
    """The volume index used by the datasets."""
    return {vid: d[2] for vid, d in dims.items()}


def parse_inventory(path: str) -> Dict[str, int]:
    """Slice counts by volume id."""
    return slice_counts(read_volume_dims(path))


def parse_detections(path: str, volume_index: Mapping[str, int]) -> DetectionDataset:
    """Read a detections file."""
    records: List[Detection] = []
    for n, obj in _records(path, DETECTION_SCHEMA):
        d = Detection(
            box=_box(obj, path, n),
            score=obj['score'],
            model_id=obj['model_id'],
            volume_id=obj['volume_id'],
            slice_index=int(obj['slice_index']),
            label=obj.get('label', DEFAULT_LABEL),
        )
        try:
            check_detection(d, volume_index)
        except ValidationError as e:
            raise _readdress(e, path, n) from e
        records.append(d)
    return DetectionDataset(tuple(records), dict(volume_index))


def parse_annotations(path: str, volume_index: Mapping[str, int]) -> AnnotationDataset:
    """Read an annotations file, rows are grouped into lesions."""
    extents: Dict[Tuple[str, str], List[Tuple[int, Box2D]]] = {}
    keys: Dict[Tuple[str, str], int] = {}
    order: List[Tuple[str, str, int]] = []
    for n, obj in _records(path, ANNOTATION_SCHEMA):
        vid = obj['volume_id']
        lid = obj['lesion_id']
        s = int(obj['slice_index'])
        if vid not in volume_index:
            raise ReferentialError(f"unknown volume_id {vid!r}",
                                   path=path, line=n, field='volume_id')
        if s >= volume_index[vid]:
            raise ReferentialError(
                f"slice {s} out of range for volume {vid!r} "
                f"with {volume_index[vid]} slices",
                path=path, line=n, field='slice_index'
            )
        extent = extents.setdefault((vid, lid), [])
        if any(s == t for t, _ in extent):
            raise ValidationError(
                f"lesion {lid!r} already has a box on slice {s}",
                path=path, line=n, field='slice_index'
            )
        if obj.get('key_slice', False):
            if (vid, lid) in keys:
                raise ValidationError(f"lesion {lid!r} has two key slices",
                                      path=path, line=n, field='key_slice')
            keys[vid, lid] = s
        extent.append((s, _box(obj, path, n)))
        order.append((vid, lid, s))
    lesions = tuple(
        LesionAnnotation(lid, vid, tuple(extent), keys.get((vid, lid)))
        for (vid, lid), extent in extents.items()
    )
    return AnnotationDataset(lesions, dict(volume_index), tuple(order))


def _lines(records: Iterable[Mapping[str, Any]]) -> str:
    return "".join(dumps(r) + '\n' for r in records)


def detection_record(d: Detection) -> Dict[str, Any]:
    return {
        'volume_id': d.volume_id,
        'slice_index': d.slice_index,
        'bbox': d.box.as_list(),
        'score': d.score,
        'model_id': d.model_id,
        'label': d.label,
    }


def format_detections(dataset: DetectionDataset) -> str:
    """Canonical text, records in stored order."""
    return _lines(detection_record(d) for d in dataset.records)


def format_annotations(dataset: AnnotationDataset) -> str:
    """Canonical text, rows in file order."""
    rows = []
    for a, s in dataset.rows():
        box = dict(a.extent)[s]
        row: Dict[str, Any] = {
            'volume_id': a.volume_id,
            'lesion_id': a.lesion_id,
            'slice_index': s,
            'bbox': box.as_list(),
        }
        if a.key_slice is not None and a.key_slice == s:
            row['key_slice'] = True
        rows.append(row)
    return _lines(rows)


def format_inventory(dims: Mapping[str, _Dims]) -> str:
    return _lines({'volume_id': vid, 'dims': list(d)} for vid, d in dims.items())


def write_text(text: str, path: Optional[str] = None) -> None:
    """Write into a file, or stdout without a path."""
    if not path:
        print(text, end="")
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)


def dump_detections(dataset: DetectionDataset, path: str) -> None:
    write_text(format_detections(dataset), path)


def dump_annotations(dataset: AnnotationDataset, path: str) -> None:
    write_text(format_annotations(dataset), path)


def dump_inventory(dims: Mapping[str, _Dims], path: str) -> None:
    write_text(format_inventory(dims), path)
