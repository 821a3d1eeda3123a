"""Membership, proper maps, biholomorphisms and Bergman kernels of Cartan domains and their quotients."""


# Copyright 2023 cartanquot developers
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


__version__ = "1.0.0"

__all__ = ["domains", "proper_maps", "reflections", "biholomorphisms", "bergman", "automorphisms",
           "run_config", "verify", "cli", "exceptions", "helper"]
