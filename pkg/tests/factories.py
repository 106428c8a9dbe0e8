# -*- coding: utf-8 -*-

"""Builders and strategies shared by the tests."""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple
from json import dumps
from hypothesis import strategies as st
from lncad.geometry import Box2D
from lncad.fusion import Detection
from lncad.evaluation import LesionAnnotation

_Coords = Tuple[float, float, float, float]


def box(x1: float, y1: float, x2: float, y2: float) -> Box2D:
    return Box2D(x1, y1, x2, y2)


def det(
    coords: Sequence[float],
    score: float,
    model_id: str = "m0",
    volume_id: str = "v0",
    slice_index: int = 0,
    label: str = "LN",
) -> Detection:
    return Detection(Box2D.from_sequence(coords), score, model_id, volume_id,
                     slice_index, label)


def lesion(
    lesion_id: str,
    extent: Dict[int, _Coords],
    volume_id: str = "v0",
    key_slice: Optional[int] = None,
) -> LesionAnnotation:
    return LesionAnnotation(
        lesion_id,
        volume_id,
        tuple((s, Box2D(*c)) for s, c in sorted(extent.items())),
        key_slice,
    )


def write_lines(path, records: Iterable[object]) -> str:
    """JSON Lines file, strings and bytes are written verbatim."""
    with open(path, 'wb') as f:
        for r in records:
            if isinstance(r, str):
                r = r.encode('utf-8')
            elif not isinstance(r, bytes):
                r = dumps(r).encode('utf-8')
            f.write(r + b"\n")
    return str(path)


def inventory(path, dims: Dict[str, Tuple[int, int, int]]) -> str:
    return write_lines(path, ({'volume_id': v, 'dims': list(d)}
                              for v, d in dims.items()))


@st.composite
def int_boxes(draw, lo: int = 0, hi: int = 20) -> Box2D:
    """Boxes with integer corners on a small grid."""
    x1 = draw(st.integers(lo, hi - 1))
    y1 = draw(st.integers(lo, hi - 1))
    x2 = draw(st.integers(x1 + 1, hi))
    y2 = draw(st.integers(y1 + 1, hi))
    return Box2D(x1, y1, x2, y2)


@st.composite
def float_boxes(draw, hi: float = 100.) -> Box2D:
    x1 = draw(st.floats(0, hi, allow_nan=False))
    y1 = draw(st.floats(0, hi, allow_nan=False))
    w = draw(st.floats(0.5, hi, allow_nan=False))
    h = draw(st.floats(0.5, hi, allow_nan=False))
    return Box2D(x1, y1, x1 + w, y1 + h)


# Two decimals keep scores distinct enough to avoid float noise
scores = st.integers(1, 100).map(lambda n: n / 100)


@st.composite
def slice_detections(
    draw,
    model_ids: Sequence[str] = ("m0",),
    max_size: int = 8,
    slice_index: int = 0,
) -> List[Detection]:
    """Detections of one group."""
    out = []
    for _ in range(draw(st.integers(0, max_size))):
        b = draw(int_boxes())
        out.append(Detection(b, draw(scores), draw(st.sampled_from(model_ids)),
                             "v0", slice_index))
    return out
