from . import (
    attack_command,
    bench_command,
    forge_command,
    hash_command,
    primegen_command,
    selftest_command,
    verify_command,
)

COMMAND_MODULES = (
    hash_command,
    attack_command,
    forge_command,
    bench_command,
    verify_command,
    selftest_command,
    primegen_command,
)

__all__ = ["COMMAND_MODULES"]
