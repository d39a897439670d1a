// SPDX-License-Identifier: Apache-2.0
//
// rula-sim: uplink spectral-efficiency simulator for rotary linear arrays
// Copyright (C) 2026 The rula-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace rula
{

// Invalid parameters or inputs. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Degenerate geometry, e.g. a device coincident with the AP.
class GeometryError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Base for numerical failures. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Singular / ill-conditioned combiner or zero combining vector.
class CombiningError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Every rotation candidate failed to evaluate.
class OptimizationError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Too many failed realizations in a sweep.
class FailureBudgetError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// File read/write failure. Maps to CLI exit code 3.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace rula
