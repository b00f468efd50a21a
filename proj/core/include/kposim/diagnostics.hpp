// Copyright 2026 The kposim Authors
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

#include <functional>
#include <string>

namespace kposim::diagnostics {

using WarningSink = std::function<void(const std::string&)>;

// Routes soft warnings (truncation adequacy, fidelity clamping). The default
// sink writes to stderr. Thread-safe.
void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

// Total warnings emitted since process start or the last reset.
long warning_count();
void reset_warning_count();

}  // namespace kposim::diagnostics
