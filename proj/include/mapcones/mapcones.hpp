// Copyright 2026 The mapcones Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAPCONES_MAPCONES_HPP
#define MAPCONES_MAPCONES_HPP

#include "mapcones/bipartite.hpp"
#include "mapcones/certify.hpp"
#include "mapcones/error.hpp"
#include "mapcones/fuzz.hpp"
#include "mapcones/maps.hpp"
#include "mapcones/random.hpp"
#include "mapcones/serialize.hpp"
#include "mapcones/witness.hpp"

#endif  // MAPCONES_MAPCONES_HPP
