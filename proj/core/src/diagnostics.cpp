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

#include "kposim/diagnostics.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace kposim::diagnostics {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](const std::string& msg) {
    std::cerr << "kposim warning: " << msg << '\n';
  };
  return s;
}

std::atomic<long> g_count{0};

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(const std::string& message) {
  ++g_count;
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

long warning_count() { return g_count.load(); }
void reset_warning_count() { g_count = 0; }

}  // namespace kposim::diagnostics
