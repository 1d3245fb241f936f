"""Uniform pass/fail reports for verification routines."""

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    op: str
    passed: bool
    tol: float
    residuals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def worst(self):
        vals = [v for v in self.residuals.values() if isinstance(v, (int, float))]
        return max(vals) if vals else 0.0

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return "[%s] %s (worst residual %.3e, tol %.1e)" % (
            status, self.op, self.worst(), self.tol)

    def to_dict(self):
        return {
            "op": self.op,
            "passed": bool(self.passed),
            "tol": self.tol,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "details": _plain(self.details),
        }


def _plain(obj):
    """Recursively convert report details into JSON-encodable values."""
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [_plain(v) for v in obj.tolist()]
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    return obj
