// Copyright 2026 The condibeam Authors
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

#include "condibeam/beam_splitter.hpp"
#include "condibeam/cat_states.hpp"
#include "condibeam/conditional.hpp"
#include "condibeam/errors.hpp"
#include "condibeam/fock.hpp"
#include "condibeam/ordering.hpp"
#include "condibeam/phase_space.hpp"
#include "condibeam/polynomials.hpp"
#include "condibeam/reference.hpp"
#include "condibeam/two_mode.hpp"
#include "condibeam/version.hpp"
