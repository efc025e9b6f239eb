// Copyright 2026 The nlphase Authors
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

#pragma once

#include "nlphase/errors.hpp"
#include "nlphase/experiments.hpp"
#include "nlphase/fock.hpp"
#include "nlphase/inference.hpp"
#include "nlphase/io.hpp"
#include "nlphase/network.hpp"
#include "nlphase/reports.hpp"
#include "nlphase/sampling.hpp"
