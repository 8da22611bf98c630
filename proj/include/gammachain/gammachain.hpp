/*
 * Copyright 2026 The gammachain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GAMMACHAIN_GAMMACHAIN_HPP
#define GAMMACHAIN_GAMMACHAIN_HPP

#include "coherence.hpp"
#include "correlations.hpp"
#include "couplings.hpp"
#include "ed.hpp"
#include "error.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "oracle.hpp"
#include "pfaffian.hpp"
#include "phase_diagram.hpp"
#include "scaling.hpp"

#endif
