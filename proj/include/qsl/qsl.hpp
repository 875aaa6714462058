// Copyright 2026 The qsl Authors
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

#include "qsl/casestudies.hpp"
#include "qsl/common.hpp"
#include "qsl/entailment.hpp"
#include "qsl/formula.hpp"
#include "qsl/linalg.hpp"
#include "qsl/manifest.hpp"
#include "qsl/modification.hpp"
#include "qsl/oracle.hpp"
#include "qsl/program.hpp"
#include "qsl/proof.hpp"
#include "qsl/proof_script.hpp"
#include "qsl/sexpr.hpp"
#include "qsl/state.hpp"
#include "qsl/syntax.hpp"
