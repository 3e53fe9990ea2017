// Copyright 2026 The noisetol Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Umbrella header for the noisetol library.
 */
#pragma once

#include "analysis.hpp"
#include "circuit.hpp"
#include "criteria.hpp"
#include "decompose.hpp"
#include "error.hpp"
#include "error_engine.hpp"
#include "generators.hpp"
#include "parallel.hpp"
#include "qasm.hpp"
#include "random.hpp"
#include "results.hpp"
#include "state_vector.hpp"
