# Copyright 2026 The dcube Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the dcube simulators.

Settings are plain dicts using the same keys as the config files, e.g.
``{"method": "exact", "g": 4, "n_b": 4}``.
"""

from ._core import (
    CapacityError,
    NumericalError,
    ValidationError,
    dim_cap,
    evolve_correlation,
    fock_correlation,
    gamma_distribution,
    gamma_exact,
    green_function,
    lehmann_poles,
    ldos,
    parse_config,
    set_dim_cap,
    simulate,
    truncation_sweep,
)

__all__ = [
    "CapacityError",
    "NumericalError",
    "ValidationError",
    "dim_cap",
    "evolve_correlation",
    "fock_correlation",
    "gamma_distribution",
    "gamma_exact",
    "green_function",
    "lehmann_poles",
    "ldos",
    "parse_config",
    "set_dim_cap",
    "simulate",
    "truncation_sweep",
]
