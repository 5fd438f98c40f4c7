// Copyright 2026 The torusopt Authors
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

#ifndef TORUSOPT_TORUSOPT_HPP_
#define TORUSOPT_TORUSOPT_HPP_

#include "torusopt/certifier.hpp"
#include "torusopt/kernel.hpp"
#include "torusopt/lattice.hpp"
#include "torusopt/optimizer.hpp"
#include "torusopt/parallel.hpp"
#include "torusopt/permutation.hpp"
#include "torusopt/pointset_io.hpp"
#include "torusopt/rational.hpp"
#include "torusopt/records.hpp"
#include "torusopt/search.hpp"
#include "torusopt/torus.hpp"

#endif  // TORUSOPT_TORUSOPT_HPP_
