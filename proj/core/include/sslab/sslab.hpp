// Copyright 2026 The sslab Authors
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

#include "sslab/counting.hpp"
#include "sslab/emission.hpp"
#include "sslab/errors.hpp"
#include "sslab/holstein_primakoff.hpp"
#include "sslab/liouvillian.hpp"
#include "sslab/mean_field.hpp"
#include "sslab/numerics.hpp"
#include "sslab/random.hpp"
#include "sslab/spin_algebra.hpp"
#include "sslab/trajectories.hpp"
#include "sslab/types.hpp"
