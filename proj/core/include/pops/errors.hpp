// SPDX-License-Identifier: Apache-2.0
//
// pops: ping-pong optimized pulse shaping for multicarrier waveforms
// Copyright (C) 2026 The pops authors
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

#ifndef POPS_ERRORS_HPP
#define POPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pops
{

// Bad input: violated precondition or malformed configuration.
class InvalidArgument : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that cannot produce a finite answer (singular matrix, etc.).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace pops

#endif
