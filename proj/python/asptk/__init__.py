"""Adaptive solution prediction toolkit: python surface of the C++ core."""

from asptk._core import (  # noqa: F401
    BadInputError,
    Instance,
    Model,
    NumericalFailureError,
    OracleGuardError,
    asp_run,
    average_precision,
    calibrate,
    cg_run,
    class_weights,
    decision_distance,
    feasible,
    gen_ba,
    gen_er,
    gen_op,
    gen_tsp,
    label,
    load_instance,
    load_model,
    objective,
    primal_gap,
    save_instance,
    save_model,
    train_svm,
    training_examples,
)

__all__ = [name for name in dir() if not name.startswith("_")]
