"""Superposition-coded caching delivery over a broadcast channel with uneven link capacities."""
from .analysis import (DelayReport, ThresholdTable, appendix_inequality, delay_mn, delay_naive,
                       delay_superposition, example1_naive, full_report, lower_bound, thresholds)
from .channel_sim import SimReport, completion_time, decodable_layers, simulate_delivery
from .combinat import binom, ksubsets, pascal_check
from .placement import FileStore, build_cache, build_caches, cache_lookup, subpacketize
from .scheduler import (LayerPlan, Schedule, XorMessage, build_schedule, find_bottleneck,
                        generate_xors, partition_layers, plan_delivery, power_coefficients,
                        schedule_delivery, symbolic_powers)
from .system_model import CapacityProfile, SystemConfig, sort_capacities, validate_config

__version__ = "0.1.0"
