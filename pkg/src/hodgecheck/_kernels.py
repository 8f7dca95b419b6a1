"""Kernel selection: compiled accelerator when available, pure Python otherwise."""

try:
    from hodgecheck import _accel as _impl
except ImportError:  # pragma: no cover - depends on build environment
    from hodgecheck import _accel_py as _impl

BACKEND = _impl.BACKEND
wedge_merge = _impl.wedge_merge
inversion_parity = _impl.inversion_parity
bareiss_echelon = _impl.bareiss_echelon
