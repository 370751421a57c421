// Copyright 2026 The qgroup Authors.
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

// Command-line front end: keygen, encrypt, decrypt, hsp, attack.
//
// Exit codes: 0 ok, 1 usage, 2 I/O or invalid instance, 3 degenerate key or
// no room for chaff, 4 frame rejected (malformed, length mismatch, digit
// range), 5 attack budget exceeded in every trial.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qgroup {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct CommandConfig {
  std::string subcommand;
  std::string group;
  std::string gens;
  int wreath_n = 0;
  std::string key_path;
  std::string in_path;
  std::string out_path;
  std::string plaintext_path;
  std::string chaff = "0";
  std::uint64_t seed = kDefaultSeed;
  std::int64_t trials = 1;
  std::int64_t bytes = 16;
  std::string oracle;
  std::int64_t budget = 1 << 16;
  std::int64_t max_rounds = 1000;
  std::int64_t known_prefix_bytes = 0;
  bool header_suppressed = false;
  bool no_timestamp = false;
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgroup
