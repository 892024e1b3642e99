// Copyright 2026 The fockwit Authors
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

#include "fockwit/criteria.hpp"
#include "fockwit/error.hpp"
#include "fockwit/fock_state.hpp"
#include "fockwit/moments.hpp"
#include "fockwit/monomial.hpp"
#include "fockwit/ppt.hpp"
#include "fockwit/sampler.hpp"
#include "fockwit/states.hpp"
#include "fockwit/sweep.hpp"
