from .analysis import (
    PerformanceVerdicts, check_functional_correctness, check_performance_spec, check_spec_match,
    deadlock_report, delivery_delays, expected_delivery_delays, expected_post_delivery_gaps,
    first_delivery_time, post_delivery_gaps, timing_report,
)
from .params import ParParams, ack_action, data_action, frame_action
from .protocol import (
    build_par_model, encapsulated_actions, hidden_actions, hidden_system_term, par_action_table, system_term,
)
from .reference import (
    buffer_spec, dormant_iterated_term, dormant_spec, expanded_spec, performance_spec, reference_specs,
    untimed_spec,
)

__all__ = [
    "ParParams", "ack_action", "data_action", "frame_action",
    "build_par_model", "encapsulated_actions", "hidden_actions", "hidden_system_term", "par_action_table",
    "system_term", "buffer_spec", "dormant_iterated_term", "dormant_spec", "expanded_spec",
    "performance_spec", "reference_specs", "untimed_spec", "PerformanceVerdicts",
    "check_functional_correctness", "check_performance_spec", "check_spec_match", "deadlock_report",
    "delivery_delays", "expected_delivery_delays", "expected_post_delivery_gaps", "first_delivery_time",
    "post_delivery_gaps", "timing_report",
]
