// Copyright 2025 The EvoStage Authors
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

#ifndef EVOSTAGE_HOST_SCRIPT_HPP_
#define EVOSTAGE_HOST_SCRIPT_HPP_

namespace evostage {

// The candidate host script (tools/candidate_host.py), embedded at build time
// so the sandbox can materialize it next to each candidate source file.
extern const char kCandidateHostScript[];

}  // namespace evostage

#endif  // EVOSTAGE_HOST_SCRIPT_HPP_
