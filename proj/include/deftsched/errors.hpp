// Copyright 2026 The deftsched Authors
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

#include <stdexcept>
#include <string>
#include <vector>

namespace deftsched {

// No assignment satisfies the memory (and, where relevant, threshold)
// constraints. `blocks` lists the 1-based depths that cannot be covered.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what, std::vector<int> blocks = {})
      : std::runtime_error(what), blocks_(std::move(blocks)) {}

  const std::vector<int>& blocks() const noexcept { return blocks_; }

 private:
  std::vector<int> blocks_;
};

// Malformed instance or configuration input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deftsched
