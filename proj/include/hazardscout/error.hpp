/*
 * Copyright 2026 The HazardScout Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hazardscout {

/// Base class for every error raised by the library. `kind()` is a stable
/// short name used in result files and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HAZARDSCOUT_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

HAZARDSCOUT_DEFINE_ERROR(InvalidArgument);
HAZARDSCOUT_DEFINE_ERROR(DegenerateSegment);
HAZARDSCOUT_DEFINE_ERROR(EmptyPartition);
HAZARDSCOUT_DEFINE_ERROR(EmptyNeighborhood);
HAZARDSCOUT_DEFINE_ERROR(GridMismatch);
HAZARDSCOUT_DEFINE_ERROR(BudgetInfeasible);
HAZARDSCOUT_DEFINE_ERROR(BudgetExceeded);
HAZARDSCOUT_DEFINE_ERROR(ZeroSpeed);
HAZARDSCOUT_DEFINE_ERROR(CapBelowChord);

#undef HAZARDSCOUT_DEFINE_ERROR

}  // namespace hazardscout
