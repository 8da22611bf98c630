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

#ifndef GAMMACHAIN_ERROR_HPP
#define GAMMACHAIN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gammachain {

/// Bad user-supplied parameters (CLI exit code 1).
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that could not be completed to its stated accuracy (CLI exit code 2).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate ground state where a unique state was requested.
class degeneracy_error : public numeric_error {
public:
    explicit degeneracy_error(const std::string& what) : numeric_error(what) {}
};

/// Couplings that do not reduce to a uniform nearest-neighbour chain.
class not_reducible : public invalid_parameter {
public:
    explicit not_reducible(const std::string& what) : invalid_parameter(what) {}
};

}  // namespace gammachain

#endif
