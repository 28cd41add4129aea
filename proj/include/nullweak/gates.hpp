// Copyright 2026 The nullweak Authors
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

// Stage builders shared by the builtin interferometers and the scenario
// loader. Every gate acts on named rails of the input slice, leaves the
// other rails untouched, and renames the rails it touches so the output
// slice basis carries the labels of the next time slice.

#include <map>
#include <string>
#include <vector>

#include "nullweak/hilbert.hpp"

namespace nullweak::setups {

using hilbert::BasisPtr;
using hilbert::StageMap;

/// Lossless splitter on rails (a, b): out_a = t a + r b, out_b = r a + t b
/// with t = sqrt(1 - R), r = i sqrt(R). R = 1/2 is the symmetric 50/50 splitter.
StageMap beamsplitter(const BasisPtr& in, const std::string& a, const std::string& b,
                      const std::string& out_a, const std::string& out_b, double reflectivity = 0.5);

/// exp(i theta) on every listed rail.
StageMap phase_shift(const BasisPtr& in, const std::vector<std::string>& paths, double theta);

/// d1(beta) on the spin factor of every rail. Needs spins {+1, 0, -1}.
StageMap spin_rotation(const BasisPtr& in, double beta);

/// Spin-routed recombination. Rail paths[j] carries the spins in
/// spins[j]; for each spin m the rail carrying m exits on outs[0] and the
/// other rails exit, in order, on outs[1..] (dark ports). A spin carried by
/// no rail is routed as if carried by paths[0].
StageMap merge(const BasisPtr& in, const std::vector<std::string>& paths,
               const std::vector<std::vector<int>>& spins, const std::vector<std::string>& outs);

/// Inverse of merge: paths[0] exits for spin m on the rail outs[j] with m in
/// spins[j]; the remaining input rails fill the other outputs in order.
StageMap split(const BasisPtr& in, const std::vector<std::string>& paths,
               const std::vector<std::vector<int>>& spins, const std::vector<std::string>& outs);

/// Pure renaming (identity matrix).
StageMap relabel(const BasisPtr& in, const std::map<std::string, std::string>& renames);

/// Matrix stage onto `in` renamed; used for explicit matrices in files.
StageMap matrix_stage(const BasisPtr& in, const hilbert::Matrix& m,
                      const std::map<std::string, std::string>& renames = {});

}  // namespace nullweak::setups
