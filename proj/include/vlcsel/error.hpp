// SPDX-License-Identifier: Apache-2.0
//
// vlcsel: joint LED selection and precoding for multi-cell VLC networks
// Copyright (C) 2026 The vlcsel authors
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

namespace vlcsel
{

// Base of every exception thrown by the library. The C API maps each
// subclass onto one error code.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
    using Error::Error;
};

// A configuration value breaks a documented invariant. field() names it.
class InvalidScenario : public Error
{
public:
    InvalidScenario(std::string field, const std::string &what)
        : Error("invalid '" + field + "': " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

class DomainError : public Error
{
public:
    using Error::Error;
};

// No assignment satisfies the constraints (no LOS LED, dimming, uniformity).
class Infeasible : public Error
{
public:
    using Error::Error;
};

class SingularChannel : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace vlcsel
