// Copyright 2026 The emergent-space Authors
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

#include "emergent/error.hpp"
#include "emergent/subset.hpp"
#include "emergent/dynsys.hpp"
#include "emergent/pretopology.hpp"
#include "emergent/sigma_measure.hpp"
#include "emergent/linalg.hpp"
#include "emergent/star_gns.hpp"
#include "emergent/context.hpp"
#include "emergent/spinlab.hpp"
