"""
Apply predicates to whole frames.
"""

from dataclasses import dataclass, replace

from ..model import DetectionList, Frame, ObjectList
from .predicates import DetectionPredicate, ObjectPredicate


def filter_objects(object_list: ObjectList, pred: ObjectPredicate) -> ObjectList:
    """Keep the objects accepted by ``pred``, in order; stamp and counter unchanged."""
    return replace(object_list, objects=tuple(o for o in object_list.objects if pred(o)))


def filter_detections(
    detection_list: DetectionList, pred: DetectionPredicate
) -> DetectionList:
    """Keep the detections accepted by ``pred``, in order."""
    return replace(
        detection_list,
        detections=tuple(d for d in detection_list.detections if pred(d)),
    )


@dataclass(frozen=True, slots=True)
class FramePipeline:
    """Object and detection predicates applied to a frame stream.

    Frame kinds without a matching predicate pass through unchanged.
    """

    objects: ObjectPredicate | None = None
    detections: DetectionPredicate | None = None

    def apply(self, frame: Frame) -> Frame:
        payload = frame.payload
        if isinstance(payload, ObjectList) and self.objects is not None:
            return replace(frame, payload=filter_objects(payload, self.objects))
        if isinstance(payload, DetectionList) and self.detections is not None:
            return replace(frame, payload=filter_detections(payload, self.detections))
        return frame

    def __str__(self) -> str:
        parts = [str(p) for p in (self.objects, self.detections) if p is not None]
        return " & ".join(parts) or "true"
