// Copyright 2026 The rulegauge Authors
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

#ifndef RULEGAUGE__ERRORS_HPP_
#define RULEGAUGE__ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace rulegauge
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// ingest
class MalformedDocument : public Error
{
public:
  using Error::Error;
};

/// Missing, ill-typed or invalid field. `path()` is a JSON pointer such as "/sample_rate_hz".
class SchemaViolation : public Error
{
public:
  SchemaViolation(std::string path, const std::string & what)
  : Error(path + ": " + what), path_(std::move(path))
  {
  }
  [[nodiscard]] const std::string & path() const { return path_; }

private:
  std::string path_;
};

class UnsupportedVersion : public Error
{
public:
  using Error::Error;
};

class InvalidRate : public Error
{
public:
  using Error::Error;
};

class IoError : public Error
{
public:
  using Error::Error;
};

// geometry
class DegenerateVehicle : public Error
{
public:
  using Error::Error;
};

class EmptyPolyline : public Error
{
public:
  using Error::Error;
};

class ZeroVector : public Error
{
public:
  using Error::Error;
};

// aggregate
class MixedRules : public Error
{
public:
  using Error::Error;
};

class EmptyInput : public Error
{
public:
  using Error::Error;
};

class EmptyScenario : public EmptyInput
{
public:
  using EmptyInput::EmptyInput;
};

class EmptyDataset : public EmptyInput
{
public:
  using EmptyInput::EmptyInput;
};

// synth
class InfeasibleSpec : public Error
{
public:
  using Error::Error;
};

}  // namespace rulegauge

#endif  // RULEGAUGE__ERRORS_HPP_
