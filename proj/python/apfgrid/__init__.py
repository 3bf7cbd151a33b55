"""Grid pattern formation by luminous robots."""

from ._core import (
    automorphism_count,
    generate,
    generate_random,
    instance_hash,
    is_asymmetric,
    parse_instance,
    patterns_equivalent,
    run,
    verify,
    write_instance,
)

__all__ = [
    "automorphism_count",
    "generate",
    "generate_random",
    "instance_hash",
    "is_asymmetric",
    "parse_instance",
    "patterns_equivalent",
    "run",
    "verify",
    "write_instance",
]
