"""Causes, responsibility, abduction and delete propagation for query answers."""

from ._core import (
    ConstraintSet,
    Fact,
    Instance,
    Program,
    QacauseError,
    abduce,
    actual_causes,
    causality_report,
    causes_under_ics,
    causes_via_abduction,
    counterfactual_causes,
    decide_vsefp,
    evaluate,
    holds,
    is_key_preserving,
    min_source_side_effect,
    minimal_contingencies,
    parse_constraints,
    parse_instance,
    parse_program,
    replay_examples,
    responsibility,
    run_cli,
    satisfies,
    vc_cause_exists,
    vc_causes,
    vc_reduction,
    vc_responsibility,
    view_side_effect_free,
    violations,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"


def main(argv=None):
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
