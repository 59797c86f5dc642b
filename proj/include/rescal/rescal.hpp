// Copyright 2026 The rescal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef RESCAL_RESCAL_HPP_
#define RESCAL_RESCAL_HPP_

#include "rescal/activation.hpp"
#include "rescal/augment.hpp"
#include "rescal/ecdf.hpp"
#include "rescal/error.hpp"
#include "rescal/frechet.hpp"
#include "rescal/image.hpp"
#include "rescal/io.hpp"
#include "rescal/parallel.hpp"
#include "rescal/report.hpp"
#include "rescal/rng.hpp"
#include "rescal/scale_stats.hpp"

#endif  // RESCAL_RESCAL_HPP_
