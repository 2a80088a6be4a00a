// Copyright 2026 The Authors.
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

#pragma once

#include "hypersc/budget.hpp"
#include "hypersc/config.hpp"
#include "hypersc/coverage.hpp"
#include "hypersc/experiment.hpp"
#include "hypersc/geometry.hpp"
#include "hypersc/grid.hpp"
#include "hypersc/heuristics.hpp"
#include "hypersc/instance_io.hpp"
#include "hypersc/metrics.hpp"
#include "hypersc/model.hpp"
#include "hypersc/moo.hpp"
#include "hypersc/offline.hpp"
#include "hypersc/rng.hpp"
#include "hypersc/simulate.hpp"
#include "hypersc/utility.hpp"
#include "hypersc/workload.hpp"
