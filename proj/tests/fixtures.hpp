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

#include <string>

#include "deftsched/crunch.hpp"

namespace deftsched::testing {

// Six devices, four blocks, affine rows; memory admits depths up to
// {2, 4, 2, 4, 2, 3}. Optimum 29 with (1,1) (6,2) (4,3) (2,4).
inline BottleneckProblem reference_problem() {
  return {RealMatrix{{10, 15, 20, 25},
                     {17, 21, 25, 29},
                     {32, 46, 60, 74},
                     {14, 21, 28, 35},
                     {34, 42, 50, 58},
                     {18, 28, 38, 48}},
          {2, 4, 2, 4, 2, 3}};
}

inline std::string data_path(const std::string& name) {
  return std::string(DEFT_DATA_DIR) + "/" + name;
}

}  // namespace deftsched::testing
