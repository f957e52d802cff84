// Copyright 2026 The diffchem Authors
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

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace diffchem::cli {

inline constexpr const char *kVersion = "0.1.0";

/// One command invocation. Options are keyed by long flag name without dashes
/// and hold the raw text given on the command line.
struct RunSpec {
    std::string command;
    std::string molecule_file;
    std::map<std::string, std::string> options;
    bool help = false;
    std::string help_text;
};

/// Throws Error(Usage) for unknown commands, flags or malformed values.
RunSpec parse_args(const std::vector<std::string> &args);

struct Outcome {
    int exit_code = 0;
    std::string report; ///< JSON text (an error object on failure)
};

/// Runs the command; module errors become {"error": {"kind", "message"}}.
Outcome execute(const RunSpec &spec);

/// parse_args + execute; writes the report to `out` (or the --output file).
int run_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace diffchem::cli
