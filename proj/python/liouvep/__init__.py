# Copyright 2026 The liouvep authors
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

"""Liouvillian spectra and eigenvalue coalescences of correlated open systems."""

from ._core import (
    __version__,
    defectiveness,
    dephasing_eigs,
    ep_condition_dephasing,
    liouvillian,
    reduced_dephasing,
    reduced_relaxation,
    relaxation_eigs,
    scan_1d,
    spectrum,
    spectrum_of,
    validate_reduction,
)

__all__ = [
    "__version__",
    "defectiveness",
    "dephasing_eigs",
    "ep_condition_dephasing",
    "liouvillian",
    "reduced_dephasing",
    "reduced_relaxation",
    "relaxation_eigs",
    "scan_1d",
    "spectrum",
    "spectrum_of",
    "validate_reduction",
]
