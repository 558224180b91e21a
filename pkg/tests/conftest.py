import numpy as np

from optosteer import ReducedParams, TwoModeCovariance


def random_reduced(rng) -> ReducedParams:
    """A random valid reduced parameter set spanning several decades."""
    return ReducedParams(
        c1=float(10.0 ** rng.uniform(-2.0, 3.0)),
        c2=float(10.0 ** rng.uniform(-2.0, 3.0)),
        nth1=float(rng.uniform(0.0, 10.0)),
        nth2=float(rng.uniform(0.0, 10.0)),
        r=float(rng.uniform(0.0, 2.5)),
        gamma=float(10.0 ** rng.uniform(-1.0, 4.0)),
    )


def random_sts(rng) -> TwoModeCovariance:
    """A random bona fide squeezed thermal state."""
    return TwoModeCovariance.squeezed_thermal(
        r=float(rng.uniform(0.0, 2.5)),
        n1=float(rng.uniform(0.0, 5.0)),
        n2=float(rng.uniform(0.0, 5.0)),
    )


def as_matrix(v11, v33, v13, v22=None, v44=None, v24=None) -> np.ndarray:
    """Standard-form matrix builder independent of the package's own one."""
    v22 = v11 if v22 is None else v22
    v44 = v33 if v44 is None else v44
    v24 = -v13 if v24 is None else v24
    m = np.zeros((4, 4))
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = v11, v22, v33, v44
    m[0, 2] = m[2, 0] = v13
    m[1, 3] = m[3, 1] = v24
    return m
